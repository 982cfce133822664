//! Enumerates pseudo-natural transformations, modifications and perturbations, and
//! prints which transformation axioms the enumerated families exercise.
//!
//! cargo run --example transformations

use std::sync::Arc;

use graycat::gray_core::{build_bicharacter_gray, build_walking, AbelianGroup};
use graycat::gray_maps::enumerate_functors;
use graycat::transfors::{enumerate_pert, enumerate_psmod, enumerate_pstransf, validate_pstransf};
use graycat::ValidationReport;

fn main() {
    let z2 = AbelianGroup::cyclic(2);
    let bc = Arc::new(build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, 1]]).unwrap());
    let arrow = Arc::new(build_walking(1));
    let fs: Vec<_> = enumerate_functors(&arrow, &bc).unwrap().into_iter().map(Arc::new).collect();
    let f = &fs[0];

    let ts: Vec<_> = enumerate_pstransf(f, f).unwrap().into_iter().map(Arc::new).collect();
    println!("{} transformations F => F", ts.len());
    let mut coverage = ValidationReport::new("transformations F => F");
    for t in &ts {
        coverage.merge(validate_pstransf(t).unwrap());
    }
    print!("{}", coverage.render_coverage());

    let ms: Vec<_> = enumerate_psmod(&ts[0], &ts[0]).unwrap().into_iter().map(Arc::new).collect();
    println!("{} modifications on the first transformation", ms.len());
    let ps = enumerate_pert(&ms[0], &ms[0]).unwrap();
    println!("{} perturbations on the first modification", ps.len());
}
