mod common;

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use common::*;
use graycat::cli_io::{parse, run, serialize, Document};
use graycat::gray_core::{build_bicharacter_gray, AbelianGroup};
use graycat::mapping_space::build_mapping_space;
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn shipped() -> Vec<PathBuf> {
    let mut v: Vec<_> = std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "gc"))
        .collect();
    v.sort();
    v
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (String::new(), String::new());
    let code = run(std::iter::once("graycat").chain(args.iter().copied()), &mut out, &mut err);
    (code, out, err)
}

#[test]
fn shipped_fixtures_round_trip_byte_for_byte() {
    let files = shipped();
    assert!(files.len() >= 10);
    for p in files {
        let text = std::fs::read_to_string(&p).unwrap();
        let doc = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        assert_eq!(serialize(&doc), text, "{}", p.display());
        assert_eq!(parse(&serialize(&doc)).unwrap(), doc);
    }
}

#[test]
fn built_categories_serialize_to_the_shipped_text() {
    for (file, c) in [("bc.gc", bc(1)), ("bc0.gc", bc(0)), ("bc4.gc", bc4()), ("walking2.gc", walking(2)), ("chain2.gc", chain(2))] {
        let mut doc = Document::new();
        doc.add_category(&c);
        assert_eq!(serialize(&doc), std::fs::read_to_string(fixture(file)).unwrap(), "{file}");
    }
    let ms = build_mapping_space(&walking(1), &bc(1)).unwrap();
    let mut doc = Document::new();
    doc.add_mapping_space(&ms);
    assert_eq!(serialize(&doc), std::fs::read_to_string(fixture("walking1_bc_space.gc")).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["validate", &fixture("bc.gc")]).0, 0);
    let (code, out, _) = cli(&["validate", &fixture("corrupted.gc")]);
    assert_eq!(code, 1);
    assert!(out.contains("violation [tensor unit]"), "{out}");
    assert_eq!(cli(&["check", "interchange", &fixture("bc.gc")]).0, 0);
    let (code, out, _) = cli(&["check", "interchange", &fixture("corrupted.gc")]);
    assert_eq!((code, out.contains("violation [tensor unit]")), (1, true), "{out}");
    assert_eq!(cli(&["check", "pasteunit", &fixture("bc_endo_cells.gc:beta1"), &fixture("bc_endo_cells.gc:F0")]).0, 0);
    assert_eq!(cli(&["validate", &fixture("missing.gc")]).0, 2);
    assert_eq!(cli(&["check", "no-such-theorem", &fixture("bc.gc")]).0, 2);
    assert_eq!(cli(&["check", "pasteunit", &fixture("bc.gc"), &fixture("bc.gc")]).0, 2);
    assert_eq!(cli(&["check", "pasteunit", &fixture("bc.gc")]).0, 0);
}

#[test]
fn malformed_input_exits_with_two_and_a_position() {
    let dir = std::env::temp_dir().join(format!("graycat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.gc");
    std::fs::write(&bad, "graycat v1\ncategory X\ncells 0: a\nsrc a b\n").unwrap();
    let (code, _, err) = cli(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line "), "{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn mapspace_and_enumerate_write_parseable_output() {
    let dir = std::env::temp_dir().join(format!("graycat-ms-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("space.gc");
    let (code, _, err) = cli(&["mapspace", &fixture("walking1.gc"), &fixture("bc.gc"), "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(std::fs::read_to_string(&out).unwrap(), std::fs::read_to_string(fixture("walking1_bc_space.gc")).unwrap());
    let (code, text, _) = cli(&["enumerate", "functor", &fixture("walking1.gc"), &fixture("bc.gc")]);
    assert_eq!(code, 0);
    let doc = parse(&text).unwrap();
    assert_eq!(doc.sections.iter().filter(|s| s.value.keyword() == "functor").count(), 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["validate".to_string(), fixture("corrupted.gc")],
        vec!["validate".to_string(), "--coverage".to_string(), fixture("bc_endo_cells.gc")],
        vec!["check".to_string(), "hcomp-typing".to_string(), fixture("bc.gc")],
        vec!["enumerate".to_string(), "pstransf".to_string(), fixture("bc_endo_cells.gc:F0"), fixture("bc_endo_cells.gc:F1")],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = cli(&args);
        let b = cli(&args);
        assert_eq!(a, b, "{args:?}");
        assert!(!a.1.is_empty());
    }
}

#[test]
fn binary_reports_exit_status() {
    let bin = env!("CARGO_BIN_EXE_graycat");
    let ok = Command::new(bin).args(["validate", &fixture("bc.gc")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["validate", &fixture("corrupted.gc")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let (_, out, _) = cli(&["validate", &fixture("corrupted.gc")]);
    assert_eq!(String::from_utf8(bad.stdout).unwrap(), out);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bicharacter_categories_round_trip(n in 1u32..4, m in 1u32..4, k in 0u32..3) {
        let c: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| ((k * a * b * (m / gcd(n, m))) % m) as usize).collect()).collect();
        let cat = Arc::new(build_bicharacter_gray(&AbelianGroup::cyclic(n), &AbelianGroup::cyclic(m), &c).unwrap());
        let mut doc = Document::new();
        doc.add_category(&cat);
        let text = serialize(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize(&back), text);
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}
