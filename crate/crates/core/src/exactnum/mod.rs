//! Exact rational scalars and the small dense matrix kernel everything else
//! is built on: canonical fractions, Bareiss determinants and exact solves.

mod matrix;
mod rational;

pub use matrix::{bareiss_determinant, solve_exact, RatMatrix};
pub use rational::{rat, Rational, ToDouble};

/// Construct a canonical rational from machine integers.
pub fn make_rational(num: i64, den: i64) -> crate::Result<Rational> {
    Rational::new(num, den)
}

pub fn to_double(r: &Rational) -> ToDouble {
    r.to_double()
}
