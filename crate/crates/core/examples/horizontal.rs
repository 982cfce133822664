//! Horizontal composition across two mapping spaces: the rank table, the interchange
//! check and the report notes on the draft table entries.
//!
//! cargo run --example horizontal

use std::sync::Arc;

use graycat::gray_core::{build_bicharacter_gray, build_walking, AbelianGroup};
use graycat::hcomp::{check_hcomp_typing, check_interchange, hcomp, DraftPairs};
use graycat::mapping_space::build_mapping_space;

fn main() {
    let z2 = AbelianGroup::cyclic(2);
    let bc = Arc::new(build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, 1]]).unwrap());
    let gh = build_mapping_space(&Arc::new(build_walking(1)), &bc).unwrap();
    let hk = build_mapping_space(&bc, &bc).unwrap();

    let pick = |ms: &graycat::mapping_space::MappingSpace, k| ms.value(ms.space.cells(k).last().unwrap());
    for r1 in 0..4u8 {
        let row: Vec<String> = (0..4u8)
            .map(|r2| hcomp(&pick(&hk, r1), &pick(&gh, r2)).unwrap().kind().to_string())
            .collect();
        println!("rank {r1} *-1 ranks 0..3: {}", row.join(", "));
    }

    let r = check_hcomp_typing(&pick(&hk, 2), &pick(&gh, 1), DraftPairs::Candidate).unwrap();
    print!("{}", r.render());

    let b = hk.transfs.iter().find(|b| b.dom == b.cod).unwrap();
    for a in &gh.transfs {
        let r = check_interchange(b, b, a).unwrap();
        println!("interchange with {}: {}", gh.space.show(gh.cell_of(&graycat::hcomp::HCell::Transf(a.clone())).unwrap()), r.ok());
    }
}
