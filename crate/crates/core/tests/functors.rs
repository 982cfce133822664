mod common;

use std::collections::BTreeSet;
use common::*;
use graycat::gray_maps::{compose_functors, enumerate_functors, identity_functor, validate_functor};

#[test]
fn enumeration_is_duplicate_free_and_valid() {
    for (g, h) in fixture_pairs() {
        let fs = enumerate_functors(&g, &h).unwrap();
        let keys: BTreeSet<_> = fs.iter().map(|f| f.key()).collect();
        assert_eq!(keys.len(), fs.len(), "[{}, {}]", g.name(), h.name());
        for f in &fs {
            let r = validate_functor(f);
            assert!(r.ok(), "{}", r.render());
        }
    }
}

#[test]
fn endofunctors_are_closed_under_composition() {
    for (_, c) in all_fixtures().into_iter().filter(|(l, _)| !l.starts_with("BC Z/4")) {
        let fs = enumerate_functors(&c, &c).unwrap();
        let keys: BTreeSet<_> = fs.iter().map(|f| f.key()).collect();
        assert!(keys.contains(&identity_functor(c.clone()).key()));
        for g in &fs {
            for f in &fs {
                let gf = compose_functors(g, f).unwrap();
                assert!(keys.contains(&gf.key()), "{} not closed", c.name());
            }
        }
    }
}

#[test]
fn composition_is_unital_and_associative() {
    let c = bc(1);
    let d = walking(1);
    let fs: Vec<_> = enumerate_functors(&d, &c).unwrap();
    let endo = enumerate_functors(&c, &c).unwrap();
    let (idd, idc) = (identity_functor(d.clone()), identity_functor(c.clone()));
    for f in &fs {
        assert_eq!(&compose_functors(&idc, f).unwrap(), f);
        assert_eq!(&compose_functors(f, &idd).unwrap(), f);
        for g in &endo {
            for h in &endo {
                let lhs = compose_functors(&compose_functors(h, g).unwrap(), f).unwrap();
                let rhs = compose_functors(h, &compose_functors(g, f).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn composition_checks_boundaries() {
    let f = identity_functor(walking(1));
    let g = identity_functor(bc(1));
    assert!(compose_functors(&g, &f).is_err());
}
