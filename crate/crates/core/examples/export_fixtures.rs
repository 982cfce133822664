//! Writes the built-in fixture categories, and a mapping space, as `graycat v1` files.
//!
//! cargo run --example export_fixtures -- <dir>

use std::path::{Path, PathBuf};
use std::sync::Arc;

use graycat::cli_io::{serialize, Document};
use graycat::gray_core::{build_bicharacter_gray, build_chain, build_walking, AbelianGroup};
use graycat::mapping_space::build_mapping_space;
use graycat::FiniteGrayCategory;

fn write(dir: &Path, file: &str, doc: &Document) {
    let path = dir.join(file);
    std::fs::write(&path, serialize(doc)).expect("write fixture");
    println!("wrote {}", path.display());
}

fn single(c: FiniteGrayCategory) -> Document {
    let mut doc = Document::new();
    doc.add_category(&Arc::new(c));
    doc
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir).expect("create output directory");
    let (z2, z4) = (AbelianGroup::cyclic(2), AbelianGroup::cyclic(4));
    let bc1 = build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, 1]]).unwrap();
    let bc0 = build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, 0]]).unwrap();
    let mult: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a * b % 4).collect()).collect();
    let bc4 = build_bicharacter_gray(&z4, &z4, &mult).unwrap();
    for k in 0..=3u8 {
        write(&dir, &format!("walking{k}.gc"), &single(build_walking(k)));
    }
    write(&dir, "chain2.gc", &single(build_chain(2)));
    write(&dir, "bc.gc", &single(bc1.clone()));
    write(&dir, "bc0.gc", &single(bc0));
    write(&dir, "bc4.gc", &single(bc4));

    let bc1 = Arc::new(bc1);
    let ms = build_mapping_space(&Arc::new(build_walking(1)), &bc1).unwrap();
    let mut doc = Document::new();
    doc.add_mapping_space(&ms);
    write(&dir, "walking1_bc_space.gc", &doc);

    // One transformation and one modification between endofunctors of BC, for the value-level commands.
    let endo = build_mapping_space(&bc1, &bc1).unwrap();
    let mut doc = Document::new();
    for (i, a) in endo.transfs.iter().enumerate() {
        doc.add_transf(a, Some(&format!("beta{i}")));
    }
    for (i, m) in endo.modifs.iter().enumerate() {
        doc.add_modif(m, Some(&format!("A{i}")));
    }
    write(&dir, "bc_endo_cells.gc", &doc);
}
