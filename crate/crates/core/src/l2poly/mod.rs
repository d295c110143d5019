//! Polynomials and exactly-integrable targets on [0,1].

mod polynomial;
mod target;

pub use polynomial::{eval_float, inner_product, Polynomial};
pub use target::{moment, norm_sq, Target};
