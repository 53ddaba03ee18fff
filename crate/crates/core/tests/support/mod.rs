#![allow(dead_code)]

pub mod rewrite;

use num_rational::BigRational;

pub fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}
