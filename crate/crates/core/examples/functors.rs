//! Enumerates the Gray-functors between two fixtures and composes them.
//!
//! cargo run --example functors

use std::sync::Arc;

use graycat::gray_core::{build_bicharacter_gray, build_walking, AbelianGroup};
use graycat::gray_maps::{compose_functors, enumerate_functors, validate_functor};

fn main() {
    let z2 = AbelianGroup::cyclic(2);
    let bc = Arc::new(build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, 1]]).unwrap());
    let arrow = Arc::new(build_walking(1));

    let fs = enumerate_functors(&arrow, &bc).unwrap();
    println!("{} functors {} -> {}", fs.len(), arrow.name(), bc.name());
    let endo = enumerate_functors(&bc, &bc).unwrap();
    println!("{} endofunctors of {}", endo.len(), bc.name());
    for (i, g) in endo.iter().enumerate() {
        let gf = compose_functors(g, &fs[0]).unwrap();
        println!("  F{i} . F: valid = {}, 2-cells {:?}", validate_functor(&gf).ok(), gf.map(2));
    }
}
