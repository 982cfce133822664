mod common;

use std::sync::Arc;

use common::checks;
use common::*;
use graycat::gray_maps::identity_functor;
use graycat::hcomp::{check_interchange_with, hcomp, HCell};
use graycat::hom_calculus::comp0_pstransf;
use graycat::mapping_space::build_mapping_space;

#[test]
fn pasteunit_on_fixtures() {
    for (g, h) in [(walking(1), bc(1)), (bc(1), bc(1)), (bc(0), bc(0))] {
        let hk = build_mapping_space(&h, &h).unwrap();
        assert!(checks::pasteunit(&g, &hk).unwrap() > 0);
    }
}

#[test]
fn interchange_on_fixtures() {
    for (g, h) in [(walking(1), bc(1)), (bc(1), bc(1)), (bc(0), bc(0))] {
        let gh = build_mapping_space(&g, &h).unwrap();
        let hk = build_mapping_space(&h, &h).unwrap();
        assert!(checks::interchange(&gh, &hk).unwrap() > 0);
    }
}

#[test]
fn interchange_detects_a_corrupted_component() {
    let c = bc(1);
    let gh = build_mapping_space(&walking(1), &c).unwrap();
    let hk = build_mapping_space(&c, &c).unwrap();
    let b = hk.transfs.iter().find(|b| b.cod == b.dom).unwrap();
    let a = gh.transfs.iter().find(|a| a.at1.iter().any(|&x| !c.is_identity(x))).unwrap();
    let mut composite = comp0_pstransf(b, b).unwrap();
    assert!(check_interchange_with(b, b, a, &composite).unwrap().ok());
    let phi = c.find(2, "1").unwrap();
    let old = composite.phi(phi);
    composite.at2[phi.idx as usize] = c.cells(3).find(|&x| c.src(x) == c.src(old) && x != old).unwrap();
    let r = check_interchange_with(b, b, a, &composite).unwrap();
    assert!(r.violated("interchange at1"), "{}", r.render());
}

#[test]
fn all_sixteen_rank_pairs_type_check() {
    let c = bc(1);
    let gh = build_mapping_space(&walking(1), &c).unwrap();
    let hk = build_mapping_space(&c, &c).unwrap();
    let (cases, notes) = checks::hcomp_typing(&gh, &hk).unwrap();
    assert_eq!(cases, 16);
    assert!(notes.iter().any(|n| n.contains("H(A_f'f)") && n.contains("resolved")));
    assert!(notes.iter().any(|n| n.contains("B_G(f'f)") && n.contains("resolved")));
}

#[test]
fn hcomp_lemmas_validate() {
    for (g, h) in [(walking(1), bc(1)), (bc(0), bc(0))] {
        let gh = build_mapping_space(&g, &h).unwrap();
        let hk = build_mapping_space(&h, &h).unwrap();
        assert!(checks::hcomp_lemmas(&gh, &hk).unwrap() > 0);
    }
}

#[test]
fn identities_are_units_for_hcomp() {
    let c = bc(1);
    let gh = build_mapping_space(&walking(1), &c).unwrap();
    let id = HCell::Functor(Arc::new(identity_functor(c.clone())));
    for k in 0..4u8 {
        for x in gh.space.cells(k) {
            let v = gh.value(x);
            assert_eq!(hcomp(&id, &v).unwrap(), v);
        }
    }
    let idw = HCell::Functor(Arc::new(identity_functor(walking(1))));
    for k in 0..4u8 {
        for x in gh.space.cells(k) {
            let v = gh.value(x);
            assert_eq!(hcomp(&v, &idw).unwrap(), v);
        }
    }
}
