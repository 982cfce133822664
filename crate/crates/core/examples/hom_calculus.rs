//! Composes transformations, modifications and perturbations inside one mapping
//! space and checks the composites against their validators.
//!
//! cargo run --example hom_calculus

use std::sync::Arc;

use graycat::gray_core::{build_bicharacter_gray, AbelianGroup};
use graycat::hom_calculus::{comp0_pstransf, comp1_psmod, tensor_psmod, whiskr_psmod};
use graycat::mapping_space::build_mapping_space;
use graycat::transfors::{validate_perturbation, validate_psmod, validate_pstransf};

fn main() {
    let z2 = AbelianGroup::cyclic(2);
    let bc = Arc::new(build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, 1]]).unwrap());
    let ms = build_mapping_space(&bc, &bc).unwrap();

    let b = ms.transfs.iter().find(|b| b.dom == b.cod).unwrap();
    let bb = comp0_pstransf(b, b).unwrap();
    println!("b *0 b valid: {}", validate_pstransf(&bb).unwrap().ok());

    let a = ms.modifs.iter().find(|a| a.dom == a.cod && a.dom.cod == b.dom).unwrap();
    println!("A *1 A valid: {}", validate_psmod(&comp1_psmod(a, a).unwrap()).unwrap().ok());
    println!("b *0 A valid: {}", validate_psmod(&whiskr_psmod(b, a).unwrap()).unwrap().ok());

    let t = tensor_psmod(a, a).unwrap();
    println!("A (x) A valid: {}", validate_perturbation(&t).unwrap().ok());
}
