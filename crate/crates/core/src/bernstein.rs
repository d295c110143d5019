//! Bernstein basis polynomials `C(n,k) xᵏ (1−x)ⁿ⁻ᵏ` expanded exactly in the
//! monomial basis, and the approximants built from sampled values.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::l2poly::Polynomial;

/// `C(n, k)` by the multiplicative formula; every partial product is an
/// integer so the division is exact.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn bernstein_basis(k: u32, n: u32) -> Result<Polynomial> {
    if k > n {
        return Err(Error::Domain(format!("basis index {k} outside [0, {n}]")));
    }
    let lead = binomial(n, k);
    // (1−x)^(n−k) = Σ_j C(n−k, j) (−1)^j x^j
    Ok(Polynomial::from_terms((0..=n - k).map(|j| {
        let mut c = &lead * binomial(n - k, j);
        if j % 2 == 1 {
            c = -c;
        }
        (k + j, Rational::from_bigint(c))
    })))
}

/// `Σ_k samples[k] · b_{k,n}`, where `samples[k]` stands for `f(k/n)`.
pub fn bernstein_approximant(samples: &[Rational], n: u32) -> Result<Polynomial> {
    let expected = n as usize + 1;
    if samples.len() != expected {
        return Err(Error::Arity {
            expected,
            got: samples.len(),
        });
    }
    let mut out = Polynomial::zero();
    for (k, f) in samples.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        for (d, c) in bernstein_basis(k as u32, n)?.terms() {
            out.add_term(d, f * c);
        }
    }
    Ok(out)
}

pub fn min_support_degree(p: &Polynomial) -> Option<u32> {
    p.min_degree()
}
