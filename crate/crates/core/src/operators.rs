//! Monomial operators `T xᵏ = c_k x^(k+m)` acting on polynomials, plus the
//! exact Hardy identity and the norm / sup-norm checks built on them.

use std::fmt;
use std::sync::Arc;

use crate::corpus::{random_polynomial, stream};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::l2poly::{eval_float, inner_product, Polynomial};

type CoeffRule = Arc<dyn Fn(u32) -> Rational + Send + Sync>;

/// An operator determined by its order `m` and coefficient sequence `c_k`.
#[derive(Clone)]
pub struct MonomialOperator {
    name: String,
    order: u32,
    coeff_rule: CoeffRule,
}

impl MonomialOperator {
    pub fn new(
        name: impl Into<String>,
        order: u32,
        coeff_rule: impl Fn(u32) -> Rational + Send + Sync + 'static,
    ) -> Self {
        MonomialOperator {
            name: name.into(),
            order,
            coeff_rule: Arc::new(coeff_rule),
        }
    }

    /// `Hf(x) = (1/x) ∫₀ˣ f`, so `H xᵏ = xᵏ/(k+1)`.
    pub fn hardy() -> Self {
        Self::new("hardy", 0, |k| Rational::new(1, i64::from(k) + 1).unwrap())
    }

    /// `Vf(x) = ∫₀ˣ f = x·Hf(x)`.
    pub fn volterra() -> Self {
        Self::new("volterra", 1, |k| {
            Rational::new(1, i64::from(k) + 1).unwrap()
        })
    }

    pub fn mult_x() -> Self {
        Self::new("mult_x", 1, |_| Rational::one())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, k: u32) -> Rational {
        (self.coeff_rule)(k)
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        Polynomial::from_terms(p.terms().map(|(k, a)| (k + self.order, a * self.coeff(k))))
    }

    /// `‖Tp‖² / ‖p‖²`; `p` must be nonzero.
    pub fn rayleigh_quotient(&self, p: &Polynomial) -> Result<Rational> {
        let denom = inner_product(p, p);
        if denom.is_zero() {
            return Err(Error::Domain(
                "Rayleigh quotient of the zero polynomial".into(),
            ));
        }
        let tp = self.apply(p);
        Ok(inner_product(&tp, &tp) / denom)
    }
}

impl fmt::Debug for MonomialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonomialOperator")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

pub const BUILTIN_NAMES: [&str; 3] = ["hardy", "volterra", "mult_x"];

pub fn builtin_operator(name: &str) -> Result<MonomialOperator> {
    match name {
        "hardy" => Ok(MonomialOperator::hardy()),
        "volterra" => Ok(MonomialOperator::volterra()),
        "mult_x" => Ok(MonomialOperator::mult_x()),
        other => Err(Error::UnknownOperator(other.to_string())),
    }
}

pub fn apply(t: &MonomialOperator, p: &Polynomial) -> Polynomial {
    t.apply(p)
}

/// The three sides of `‖p‖² = ‖(1−H)p‖² + (∫₀¹ p)²`, each computed on its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardyIdentityTerms {
    pub lhs: Rational,
    pub contraction_term: Rational,
    pub integral_sq: Rational,
}

impl HardyIdentityTerms {
    pub fn holds(&self) -> bool {
        self.lhs == &self.contraction_term + &self.integral_sq
    }
}

pub fn hardy_identity_terms(p: &Polynomial) -> HardyIdentityTerms {
    let lhs = inner_product(p, p);
    let residual = p - &MonomialOperator::hardy().apply(p);
    let contraction_term = inner_product(&residual, &residual);
    let integral = p.integral_to(&Rational::one());
    HardyIdentityTerms {
        lhs,
        contraction_term,
        integral_sq: &integral * &integral,
    }
}

/// Largest `‖Tp‖/‖p‖` over `trials` seeded random polynomials of degree at
/// most `max_degree`. Quotients are exact; only the final square root is
/// taken in binary64.
pub fn operator_norm_lower_bound(
    t: &MonomialOperator,
    max_degree: u32,
    trials: u32,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let mut best = Rational::zero();
    for trial in 0..trials {
        let p = random_polynomial(&mut stream(seed, u64::from(trial)), max_degree);
        let q = t.rayleigh_quotient(&p)?;
        if q > best {
            best = q;
        }
    }
    Ok(best.to_f64().sqrt())
}

/// Grid maxima of `|Hp|` and `|p|` on `grid_points` uniform nodes of [0,1].
pub fn sup_contraction_check(p: &Polynomial, grid_points: u32) -> Result<(f64, f64)> {
    if grid_points < 2 {
        return Err(Error::Domain("grid_points must be at least 2".into()));
    }
    let hp = MonomialOperator::hardy().apply(p);
    let last = f64::from(grid_points - 1);
    let (mut sup_hp, mut sup_p) = (0.0f64, 0.0f64);
    for i in 0..grid_points {
        let x = f64::from(i) / last;
        sup_hp = sup_hp.max(eval_float(&hp, x)?.abs());
        sup_p = sup_p.max(eval_float(p, x)?.abs());
    }
    Ok((sup_hp, sup_p))
}
