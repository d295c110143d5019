//! Exact rational tools for monomial operators on L²[0,1].
//!
//! The crate works entirely over the rationals: polynomials and a few
//! piecewise targets with closed-form moments, the Hardy, Volterra and
//! multiplication operators, Gram and Cauchy determinants, orthogonal
//! projections onto drifting windows of monomials, and Bernstein
//! approximants. Floating point appears only at the reporting edge.

pub mod bernstein;
pub mod corpus;
pub mod error;
pub mod exactnum;
pub mod gram;
pub mod l2poly;
pub mod muntz;
pub mod operators;

pub use error::{Error, Result};
pub use exactnum::{rat, RatMatrix, Rational};
pub use l2poly::{Polynomial, Target};
pub use operators::MonomialOperator;
