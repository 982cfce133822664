//! Builds mapping spaces as finite Gray-categories, validates them, and runs the
//! postcomposition map L on the endo-space of BC.
//!
//! cargo run --release --example mapping_space

use std::sync::Arc;

use graycat::gray_core::{build_bicharacter_gray, build_walking, validate_gray_category, AbelianGroup};
use graycat::mapping_space::{build_mapping_space, check_l_welldef, eval_i};

fn main() {
    let z2 = AbelianGroup::cyclic(2);
    let bc = Arc::new(build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, 1]]).unwrap());
    for d in [build_walking(0), build_walking(1), build_walking(2)] {
        let ms = build_mapping_space(&Arc::new(d), &bc).unwrap();
        let ok = validate_gray_category(&ms.space).ok();
        println!("{}: cells {:?}, Gray-category = {ok}", ms.space.name(), ms.space.counts());
    }

    let point = Arc::new(build_walking(0));
    let s = build_mapping_space(&point, &bc).unwrap();
    let i = eval_i(&s).unwrap();
    println!("evaluation sends the 3-cells to {:?}", i.map(3));

    let outer = build_mapping_space(&bc, &bc).unwrap();
    print!("{}", check_l_welldef(&outer, &s, &s).unwrap().render());
}
