//! Builds the fixture Gray-categories, validates them, and shows what a single
//! corrupted table entry looks like to the validator.
//!
//! cargo run --example gray_categories

use graycat::gray_core::{build_bicharacter_gray, build_walking, validate_gray_category, AbelianGroup};
use graycat::Op;

fn main() {
    for k in 0..=3u8 {
        let c = build_walking(k);
        println!("{}: cells {:?}, ok = {}", c.name(), c.counts(), validate_gray_category(&c).ok());
    }

    let z2 = AbelianGroup::cyclic(2);
    let c = build_bicharacter_gray(&z2, &z2, &[vec![0, 0], vec![0, 1]]).unwrap();
    println!("{}: cells {:?}", c.name(), c.counts());
    let (one, e) = (c.find(2, "1").unwrap(), c.id(c.cells(1).next().unwrap()).unwrap());
    println!("tensor 1 1 = {}", c.show(c.tensor(one, one).unwrap()));

    let mut bad = c.clone();
    let old = bad.tensor(e, one).unwrap();
    let other = bad.cells(3).find(|&x| x != old).unwrap();
    bad.set_entry(Op::Tensor, e, one, Some(other));
    print!("{}", validate_gray_category(&bad).render());
}
