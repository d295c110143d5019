use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Polynomial with exact rational coefficients, stored sparsely by degree.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: BTreeMap<u32, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c * x^degree`.
    pub fn monomial(degree: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c);
        p
    }

    /// `x^degree`.
    pub fn x_pow(degree: u32) -> Self {
        Self::monomial(degree, Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Dense coefficients, lowest degree first.
    pub fn from_dense(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(k, c)| (k as u32, c)))
    }

    pub fn add_term(&mut self, degree: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&degree) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(degree, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, degree: u32) -> Rational {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, a * c)).collect(),
        }
    }

    /// `∫₀ᵘ p(x) dx`.
    pub fn integral_to(&self, u: &Rational) -> Rational {
        self.terms()
            .map(|(k, a)| a * u.pow(k + 1) / Rational::from(k + 1))
            .sum()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let Some(top) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for k in (0..=top).rev() {
            acc *= x;
            if let Some(c) = self.coeffs.get(&k) {
                acc += c;
            }
        }
        acc
    }

    /// Exact values at the nodes `i / den`, one per numerator.
    ///
    /// Clears denominators once and runs integer Horner per node, which is
    /// much cheaper than rational Horner for high-degree polynomials.
    pub fn eval_at_fractions(&self, numerators: &[i64], den: i64) -> Vec<Rational> {
        let Some(top) = self.degree() else {
            return vec![Rational::zero(); numerators.len()];
        };
        let lcm = self
            .coeffs
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let den_big = BigInt::from(den);
        let mut den_pows = Vec::with_capacity(top as usize + 1);
        let mut pw = BigInt::one();
        for _ in 0..=top {
            den_pows.push(pw.clone());
            pw *= &den_big;
        }
        // p(i/d) = Σ c_k i^k d^(top-k) / (lcm d^top)
        let ints: Vec<BigInt> = (0..=top)
            .map(|k| match self.coeffs.get(&k) {
                Some(c) => c.numer() * (&lcm / c.denom()) * &den_pows[(top - k) as usize],
                None => BigInt::zero(),
            })
            .collect();
        let scale = &lcm * &den_pows[top as usize];
        numerators
            .iter()
            .map(|&i| {
                let i = BigInt::from(i);
                let mut acc = BigInt::zero();
                for c in ints.iter().rev() {
                    acc = acc * &i + c;
                }
                Rational::from_bigints(acc, scale.clone()).expect("positive scale")
            })
            .collect()
    }
}

/// Horner evaluation in binary64 after rounding each coefficient.
pub fn eval_float(p: &Polynomial, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "evaluation point {x} outside [0, 1]"
        )));
    }
    let Some(top) = p.degree() else {
        return Ok(0.0);
    };
    let mut acc = 0.0;
    for k in (0..=top).rev() {
        acc = acc * x + p.coeffs.get(&k).map_or(0.0, Rational::to_f64);
    }
    Ok(acc)
}

/// `⟨p, q⟩ = ∫₀¹ p q = Σ a_i b_j / (i + j + 1)` for real coefficients.
pub fn inner_product(p: &Polynomial, q: &Polynomial) -> Rational {
    let mut acc = Rational::zero();
    for (i, a) in p.terms() {
        for (j, b) in q.terms() {
            acc += a * b / Rational::from(i + j + 1);
        }
    }
    acc
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as a degree-sorted list of `[degree, "num/den"]` pairs.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for (k, c) in self.terms() {
            seq.serialize_element(&(k, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    fn poly(dense: &[(i64, i64)]) -> Polynomial {
        Polynomial::from_dense(dense.iter().map(|&(n, d)| rat(n, d)))
    }

    #[test]
    fn canonical_sparse_form() {
        let p = poly(&[(1, 1), (0, 1), (2, 1)]);
        assert_eq!(p.len(), 2);
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q, Polynomial::zero());
        assert_eq!(p.min_degree(), Some(0));
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn inner_product_examples() {
        let one = Polynomial::x_pow(0);
        let x = Polynomial::x_pow(1);
        assert_eq!(inner_product(&one, &one), rat(1, 1));
        assert_eq!(inner_product(&x, &x), rat(1, 3));
        let p = &one + &x;
        assert_eq!(inner_product(&p, &p), rat(7, 3));
    }

    #[test]
    fn eval_float_examples() {
        assert_eq!(eval_float(&poly(&[(1, 1), (1, 1)]), 0.5).unwrap(), 1.5);
        assert_eq!(eval_float(&Polynomial::x_pow(2), 0.0).unwrap(), 0.0);
        assert_eq!(
            eval_float(&poly(&[(0, 1), (1, 2), (1, 2)]), 1.0).unwrap(),
            1.0
        );
        assert!(matches!(
            eval_float(&Polynomial::x_pow(1), 1.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eval_float(&Polynomial::x_pow(1), -0.1),
            Err(Error::Domain(_))
        ));
        assert_eq!(eval_float(&Polynomial::zero(), 0.3).unwrap(), 0.0);
    }

    #[test]
    fn fraction_nodes_match_rational_horner() {
        let p = poly(&[(3, 7), (0, 1), (-5, 2), (1, 9), (0, 1), (-2, 3)]);
        let nodes: Vec<i64> = (0..=10).collect();
        let fast = p.eval_at_fractions(&nodes, 10);
        for (i, v) in nodes.iter().zip(fast) {
            assert_eq!(v, p.eval(&rat(*i, 10)));
        }
        assert_eq!(
            Polynomial::zero().eval_at_fractions(&[1, 2], 3),
            vec![rat(0, 1); 2]
        );
    }

    #[test]
    fn serializes_as_pairs() {
        let p = poly(&[(0, 1), (1, 2), (-1, 3)]);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"[[1,"1/2"],[2,"-1/3"]]"#
        );
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-9i64..=9, 1i64..=9), 0..8)
            .prop_map(|c| Polynomial::from_dense(c.into_iter().map(|(n, d)| rat(n, d))))
    }

    proptest! {
        #[test]
        fn inner_product_symmetric(p in small_poly(), q in small_poly()) {
            prop_assert_eq!(inner_product(&p, &q), inner_product(&q, &p));
        }

        #[test]
        fn inner_product_positive_definite(p in small_poly()) {
            let ip = inner_product(&p, &p);
            if p.is_zero() {
                prop_assert!(ip.is_zero());
            } else {
                prop_assert!(ip.is_positive());
            }
        }

        #[test]
        fn inner_product_is_integral_of_product(p in small_poly(), q in small_poly()) {
            prop_assert_eq!(inner_product(&p, &q), (&p * &q).integral_to(&Rational::one()));
        }
    }
}
