mod common;

use std::sync::Arc;

use common::checks::l_checks;
use common::*;
use graycat::gray_maps::enumerate_functors;
use graycat::hcomp::HCell;
use graycat::mapping_space::{
    build_mapping_space, check_i_naturality, check_j_extranaturality, l_beta_two, l_image, NESTED_FUNCTOR_LIMIT,
};
use graycat::transfors::validate_perturbation;
use graycat::GrayError;

#[test]
fn l_is_well_defined_and_multiplicative_over_a_point() {
    let n = l_checks(&walking(0), &bc(1), &bc(1)).unwrap();
    // 30 cells of [BC, BC] and 8 composable pairs of its transformations.
    assert_eq!(n, 30 + 8);
}

#[test]
fn l_is_well_defined_and_multiplicative_over_an_arrow() {
    l_checks(&walking(1), &bc(0), &bc(0)).unwrap();
}

#[test]
fn l_cocycle_pieces_are_perturbations() {
    let (d, h) = (walking(1), bc(1));
    let s = build_mapping_space(&d, &h).unwrap();
    let outer = build_mapping_space(&h, &h).unwrap();
    for b in &outer.transfs {
        for a2 in &s.transfs {
            for a in s.transfs.iter().filter(|a| a.cod == a2.dom) {
                let p = l_beta_two(b, a2, a).unwrap();
                assert!(validate_perturbation(&p).unwrap().ok());
            }
        }
    }
}

#[test]
fn l_preserves_rank() {
    let h = bc(1);
    let s = build_mapping_space(&walking(0), &h).unwrap();
    let outer = build_mapping_space(&h, &h).unwrap();
    for k in 0..4u8 {
        for c in outer.space.cells(k) {
            let img = l_image(&outer.value(c), &s, &s).unwrap();
            assert_eq!(img.output.rank(), k);
            assert_eq!(img.cocycle.is_empty(), k != 1 || s.space.composable_pairs().is_empty());
        }
    }
}

#[test]
fn nested_spaces_past_the_limit_are_refused() {
    let h = chain(NESTED_FUNCTOR_LIMIT as u32);
    let s = build_mapping_space(&walking(0), &h).unwrap();
    assert!(s.functors.len() > NESTED_FUNCTOR_LIMIT);
    let f = Arc::new(graycat::gray_maps::identity_functor(h.clone()));
    let err = l_image(&HCell::Functor(f), &s, &s).unwrap_err();
    assert!(matches!(err, GrayError::TooLarge(_)));
}

#[test]
fn evaluation_is_natural_and_unit_is_extranatural() {
    let (c0, c1) = (bc(0), bc(1));
    let p = walking(0);
    let (s0, s1) = (build_mapping_space(&p, &c0).unwrap(), build_mapping_space(&p, &c1).unwrap());
    let (gg, hh, gh) = (
        build_mapping_space(&c0, &c0).unwrap(),
        build_mapping_space(&c1, &c1).unwrap(),
        build_mapping_space(&c0, &c1).unwrap(),
    );
    for k in enumerate_functors(&c0, &c1).unwrap().into_iter().map(Arc::new) {
        let r = check_i_naturality(&k, &s0, &s1).unwrap();
        assert!(r.ok(), "{}", r.render());
        let r = check_j_extranaturality(&k, &gg, &hh, &gh).unwrap();
        assert!(r.ok(), "{}", r.render());
    }
}
