#![allow(dead_code)]

use tautilt_core::field::Field;
use tautilt_core::{BoundQuiver, Rational};

pub const RUNNING: &str = include_str!("../../../../algebras/a3_alpha_beta.quiver");
pub const LOOP: &str = include_str!("../../../../algebras/loop_rad2.quiver");
pub const NAKAYAMA: &str = include_str!("../../../../algebras/nakayama_cycle_rad2.quiver");
pub const A2: &str = include_str!("../../../../algebras/a2.quiver");
pub const A3: &str = include_str!("../../../../algebras/a3.quiver");
pub const POINT: &str = include_str!("../../../../algebras/point.quiver");

pub const CORPUS: [(&str, &str); 6] = [
    ("running", RUNNING),
    ("loop", LOOP),
    ("nakayama", NAKAYAMA),
    ("a2", A2),
    ("a3", A3),
    ("point", POINT),
];

pub fn alg(text: &str) -> BoundQuiver {
    BoundQuiver::parse(text).expect("corpus algebra parses")
}

pub fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}
