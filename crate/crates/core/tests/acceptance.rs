//! The acceptance gate: every criterion runs, prints one PASS/FAIL line, and the test
//! fails if any criterion does.

mod common;

use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::checks;
use common::*;
use graycat::cli_io::{parse, run, serialize};
use graycat::gray_core::validate_gray_category;
use graycat::gray_maps::validate_functor;
use graycat::hcomp::check_interchange_with;
use graycat::hom_calculus::comp0_pstransf;
use graycat::mapping_space::{build_mapping_space, eval_i, MappingSpace};
use graycat::FiniteGrayCategory as Cat;

type Detail = Result<String, String>;

struct Gate {
    lines: Vec<String>,
    failed: usize,
}

impl Gate {
    fn run(&mut self, id: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Detail) {
        let t = Instant::now();
        let out = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let el = t.elapsed();
        let out = match (out, limit) {
            (Ok(d), Some(l)) if el > l => Err(format!("{d}; took {:.1}s, limit {}s", el.as_secs_f64(), l.as_secs())),
            (o, _) => o,
        };
        let line = match out {
            Ok(d) => format!("PASS {id:>2} {name}: {d} ({:.2}s)", el.as_secs_f64()),
            Err(e) => {
                self.failed += 1;
                format!("FAIL {id:>2} {name}: {e} ({:.2}s)", el.as_secs_f64())
            }
        };
        println!("{line}");
        self.lines.push(line);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn space(g: &Arc<Cat>, h: &Arc<Cat>) -> Result<MappingSpace, String> {
    build_mapping_space(g, h).map_err(|e| format!("[{}, {}]: {e}", g.name(), h.name()))
}

/// BC fixtures with their endo-spaces, and `[G, BC]` for the small walking domains.
fn bc_spaces() -> Result<Vec<(MappingSpace, MappingSpace)>, String> {
    let mut out = Vec::new();
    for (g, h) in [(walking(0), bc(1)), (walking(1), bc(1)), (bc(1), bc(1)), (bc(0), bc(0))] {
        out.push((space(&g, &h)?, space(&h, &h)?));
    }
    Ok(out)
}

fn gray_axiom_suite() -> Detail {
    for (label, c) in all_fixtures() {
        let r = validate_gray_category(&c);
        ensure(r.ok(), || format!("{label}: {}", r.render()))?;
    }
    let mut parts = Vec::new();
    for base in bc_z2_family() {
        let ms = mutants(&base);
        let mut escaped = 0;
        for m in &ms {
            if validate_gray_category(&m.cat).ok() {
                ensure(bc_z2_family().iter().any(|f| **f == m.cat), || format!("undetected mutant {}", m.what))?;
                escaped += 1;
            }
        }
        let rate = (ms.len() - escaped) as f64 / ms.len() as f64;
        ensure(ms.len() >= 100 && rate >= 0.99, || format!("{}: {} mutants, rate {rate:.4}", base.name(), ms.len()))?;
        parts.push(format!("{}/{} detected, {escaped} equivalent", ms.len() - escaped, ms.len()));
    }
    Ok(format!("{} fixtures valid; mutants {}", all_fixtures().len(), parts.join(" and ")))
}

fn definition_validators() -> Detail {
    let coverage = fixture_coverage();
    let mut least = u64::MAX;
    for ax in all_axioms() {
        let c = coverage.coverage.get(ax).copied().unwrap_or_default();
        ensure(c.nontrivial > 0, || format!("{ax} is vacuous"))?;
        least = least.min(c.nontrivial);
    }
    Ok(format!("{} axioms non-vacuous, fewest nontrivial instances {least}", all_axioms().count()))
}

fn hom_calculus() -> Detail {
    let mut n = 0;
    for (gh, hk) in bc_spaces()? {
        n += checks::hom_calculus(&gh)? + checks::hom_calculus(&hk)?;
        n += checks::composite_cocycle_oracle(&gh)?;
    }
    Ok(format!("{n} closure, unit and associativity instances"))
}

fn pasteunit() -> Detail {
    let mut n = 0;
    for (h, k) in space_pairs() {
        let hk = space(&h, &k)?;
        for g in [walking(0), walking(1), h.clone()] {
            n += checks::pasteunit(&g, &hk)?;
        }
    }
    Ok(format!("{n} instances equal cell for cell"))
}

fn interchange() -> Detail {
    let mut n = 0;
    for (gh, hk) in bc_spaces()? {
        n += checks::interchange(&gh, &hk)?;
    }
    let c = bc(1);
    let (gh, hk) = (space(&walking(1), &c)?, space(&c, &c)?);
    let b = hk.transfs.iter().find(|b| b.cod == b.dom).ok_or("no endo-transformation")?;
    let a = gh.transfs.iter().find(|a| a.at1.iter().any(|&x| !c.is_identity(x))).ok_or("no nontrivial transformation")?;
    let mut composite = comp0_pstransf(b, b).map_err(|e| e.to_string())?;
    let phi = c.find(2, "1").ok_or("no 2-cell 1")?;
    let old = composite.phi(phi);
    composite.at2[phi.idx as usize] = c.cells(3).find(|&x| c.src(x) == c.src(old) && x != old).ok_or("no alternative")?;
    let r = check_interchange_with(b, b, a, &composite).map_err(|e| e.to_string())?;
    ensure(!r.ok(), || "corrupted at2 went undetected".into())?;
    Ok(format!("{n} composable triples hold; injected at2 corruption detected"))
}

fn hcomp_typing() -> Detail {
    let c = bc(1);
    let (gh, hk) = (space(&walking(1), &c)?, space(&c, &c)?);
    let (cases, notes) = checks::hcomp_typing(&gh, &hk)?;
    ensure(cases == 16, || format!("only {cases} rank cases"))?;
    for entry in ["H(A_f'f)", "B_G(f'f)"] {
        ensure(notes.iter().any(|n| n.contains(entry) && n.contains("resolved")), || format!("{entry} unresolved"))?;
    }
    let (gh0, hk0) = (space(&bc(0), &bc(0))?, space(&bc(0), &bc(0))?);
    checks::hcomp_typing(&gh0, &hk0)?;
    Ok("16 rank cases typed and validated; both draft pair entries resolved as id".into())
}

fn hcomp_lemmas() -> Detail {
    let mut n = 0;
    for (gh, hk) in bc_spaces()? {
        n += checks::hcomp_lemmas(&gh, &hk)?;
    }
    Ok(format!("{n} constructed cells validate"))
}

fn mapping_space() -> Detail {
    let mut shown = Vec::new();
    for g in [walking(0), walking(1)] {
        let h = bc(1);
        let ms = space(&g, &h)?;
        let r = validate_gray_category(&ms.space);
        ensure(r.ok(), || r.render())?;
        let (got, want) = (ms.space.counts(), oracle_counts(&g, &h));
        ensure(got == want, || format!("[{}, BC]: {got:?} vs oracle {want:?}", g.name()))?;
        shown.push(format!("{got:?}"));
    }
    let c = bc(1);
    let ms = space(&walking(0), &c)?;
    let i = eval_i(&ms).map_err(|e| e.to_string())?;
    ensure(validate_functor(&i).ok(), || "eval_i is not a functor".into())?;
    for k in 0..4u8 {
        let mut image = i.map(k).to_vec();
        image.sort();
        image.dedup();
        ensure(image.len() == c.count(k) && ms.space.count(k) == c.count(k), || format!("eval_i in dimension {k}"))?;
    }
    Ok(format!("counts {} match the oracle; eval_i bijective on cells", shown.join(" and ")))
}

fn l_theorems() -> Detail {
    let mut n = 0;
    for d in [walking(0), walking(1)] {
        n += checks::l_checks(&d, &bc(1), &bc(1))?;
    }
    Ok(format!("{n} L-images and composable pairs checked over D = 1 and D = walking(1)"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (String::new(), String::new());
    let code = run(std::iter::once("graycat").chain(args.iter().copied()), &mut out, &mut err);
    (code, out, err)
}

fn serialization() -> Detail {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut files: Vec<_> = std::fs::read_dir(&dir).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
    files.retain(|p| p.extension().is_some_and(|x| x == "gc"));
    files.sort();
    for p in &files {
        let text = std::fs::read_to_string(p).map_err(|e| e.to_string())?;
        let doc = parse(&text).map_err(|e| format!("{}: {e}", p.display()))?;
        ensure(serialize(&doc) == text, || format!("{} does not round-trip", p.display()))?;
    }
    let bc_gc = fixture("bc.gc");
    let corrupted = fixture("corrupted.gc");
    let cases: [(&[&str], i32); 5] = [
        (&["validate", &bc_gc], 0),
        (&["check", "interchange", &bc_gc], 0),
        (&["check", "hcomp-typing", &bc_gc], 0),
        (&["validate", &corrupted], 1),
        (&["check", "pasteunit", &corrupted], 1),
    ];
    for (args, want) in cases {
        let (a, b) = (cli(args), cli(args));
        ensure(a.0 == want, || format!("{args:?} exited {} instead of {want}", a.0))?;
        ensure(a == b, || format!("{args:?} is not deterministic"))?;
    }
    let (_, out, _) = cli(&["validate", &corrupted]);
    ensure(out.contains("violation ["), || "corrupted fixture printed no witness".into())?;
    let bad = std::env::temp_dir().join(format!("graycat-acceptance-{}.gc", std::process::id()));
    std::fs::write(&bad, "graycat v1\ncategory X\ncells 0: a\nsrc a b\n").map_err(|e| e.to_string())?;
    let code = cli(&["validate", bad.to_str().unwrap()]).0;
    let _ = std::fs::remove_file(&bad);
    ensure(code == 2, || format!("malformed file exited {code}"))?;
    Ok(format!("{} fixtures byte-identical; exit codes 0/1/2 as specified; reports deterministic", files.len()))
}

#[test]
fn acceptance() {
    let mut gate = Gate { lines: Vec::new(), failed: 0 };
    let secs = |s| Some(Duration::from_secs(s));
    gate.run(1, "Gray-axiom suite and mutation testing", secs(10), gray_axiom_suite);
    gate.run(2, "definition validators and axiom coverage", secs(60), definition_validators);
    gate.run(3, "closure, units and associativity of composites", secs(120), hom_calculus);
    gate.run(4, "pasteunit", None, pasteunit);
    gate.run(5, "interchange of horizontal and vertical composition", None, interchange);
    gate.run(6, "horizontal composition typing", None, hcomp_typing);
    gate.run(7, "horizontal composite lemmas", None, hcomp_lemmas);
    gate.run(8, "mapping spaces against the enumeration oracle", None, mapping_space);
    gate.run(9, "L well-defined, L(beta)^2 perturbations, L multiplicative", secs(300), l_theorems);
    gate.run(10, "serialization and command line", None, serialization);
    println!("{} of 10 criteria pass", 10 - gate.failed);
    assert_eq!(gate.failed, 0, "\n{}", gate.lines.join("\n"));
}
