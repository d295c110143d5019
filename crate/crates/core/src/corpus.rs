//! Seeded random polynomials used by the identity and inequality checks.
//!
//! Coefficients have numerators uniform in [−9, 9] and denominators uniform
//! in [1, 9]. Every polynomial gets its own ChaCha stream derived from
//! `(seed, index)`, so items can be generated independently and in any order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::Rational;
use crate::l2poly::Polynomial;

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Dense random polynomial of degree at most `max_degree`; never zero.
pub fn random_polynomial<R: Rng>(rng: &mut R, max_degree: u32) -> Polynomial {
    loop {
        let p = Polynomial::from_dense((0..=max_degree).map(|_| {
            let num = rng.gen_range(-9i64..=9);
            let den = rng.gen_range(1i64..=9);
            Rational::new(num, den).expect("nonzero denominator")
        }));
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn seeded_corpus(seed: u64, count: usize, max_degree: u32) -> Vec<Polynomial> {
    (0..count as u64)
        .map(|i| random_polynomial(&mut stream(seed, i), max_degree))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(seeded_corpus(7, 5, 20), seeded_corpus(7, 5, 20));
        assert_ne!(seeded_corpus(7, 5, 20), seeded_corpus(8, 5, 20));
    }

    #[test]
    fn respects_degree_bound() {
        for p in seeded_corpus(1, 50, 6) {
            assert!(!p.is_zero());
            assert!(p.degree().unwrap() <= 6);
            for (_, c) in p.terms() {
                assert!(c.abs() <= Rational::from(9u32));
                assert!(c.denom() <= &9.into());
            }
        }
    }
}
