use crate::error::{Error, Result};
use crate::exactnum::Rational;

use super::Polynomial;

/// An element of L²[0,1] whose monomial moments have exact closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Poly(Polynomial),
    /// χ_[s,1]
    IndicatorTail(Rational),
    /// (x − a)⁺
    RampTail(Rational),
}

fn check_unit_param(what: &str, v: &Rational) -> Result<()> {
    if v.is_negative() || *v >= 1 {
        return Err(Error::Domain(format!("{what} = {v} must lie in [0, 1)")));
    }
    Ok(())
}

fn check_upper(u: &Rational) -> Result<()> {
    if !u.is_positive() || *u > 1 {
        return Err(Error::Domain(format!("upper limit {u} must lie in (0, 1]")));
    }
    Ok(())
}

impl Target {
    pub fn indicator_tail(s: Rational) -> Result<Self> {
        check_unit_param("indicator start", &s)?;
        Ok(Target::IndicatorTail(s))
    }

    pub fn ramp_tail(a: Rational) -> Result<Self> {
        check_unit_param("ramp start", &a)?;
        Ok(Target::RampTail(a))
    }

    pub fn one() -> Self {
        Target::Poly(Polynomial::x_pow(0))
    }

    /// `∫₀ᵘ t(x) xᵏ dx`.
    pub fn moment(&self, k: u32, u: &Rational) -> Result<Rational> {
        check_upper(u)?;
        let k1 = Rational::from(k + 1);
        Ok(match self {
            Target::Poly(p) => p
                .terms()
                .map(|(j, a)| a * u.pow(j + k + 1) / Rational::from(j + k + 1))
                .sum(),
            Target::IndicatorTail(s) => {
                if u <= s {
                    Rational::zero()
                } else {
                    (u.pow(k + 1) - s.pow(k + 1)) / k1
                }
            }
            Target::RampTail(a) => {
                if u <= a {
                    Rational::zero()
                } else {
                    let k2 = Rational::from(k + 2);
                    (u.pow(k + 2) - a.pow(k + 2)) / k2 - a * (u.pow(k + 1) - a.pow(k + 1)) / k1
                }
            }
        })
    }

    /// `∫₀¹ t(x) x^α dx` for a rational exponent `α > −1`.
    ///
    /// Only polynomial targets have exact moments against fractional powers;
    /// the tail variants would need `s^(α+1)`, which is generally irrational.
    pub fn moment_exponent(&self, alpha: &Rational) -> Result<Rational> {
        if alpha.is_integer() && !alpha.is_negative() {
            let k = alpha
                .to_i64()
                .and_then(|k| u32::try_from(k).ok())
                .ok_or_else(|| Error::Domain(format!("exponent {alpha} too large")))?;
            return self.moment(k, &Rational::one());
        }
        match self {
            Target::Poly(p) => {
                let mut acc = Rational::zero();
                for (j, a) in p.terms() {
                    let d = Rational::from(j + 1) + alpha;
                    if !d.is_positive() {
                        return Err(Error::Domain(format!("x^{alpha} is not integrable")));
                    }
                    acc += a / d;
                }
                Ok(acc)
            }
            _ => Err(Error::Capability(format!(
                "no exact moment of {self:?} against x^{alpha}"
            ))),
        }
    }

    /// `∫₀ᵘ t(x)² dx`.
    pub fn norm_sq(&self, u: &Rational) -> Result<Rational> {
        check_upper(u)?;
        Ok(match self {
            Target::Poly(p) => (p * p).integral_to(u),
            Target::IndicatorTail(s) => {
                if u <= s {
                    Rational::zero()
                } else {
                    u - s
                }
            }
            Target::RampTail(a) => {
                if u <= a {
                    Rational::zero()
                } else {
                    (u - a).pow(3) / Rational::from(3u32)
                }
            }
        })
    }

    /// `⟨t, p⟩` on [0,1].
    pub fn inner_with(&self, p: &Polynomial) -> Result<Rational> {
        let one = Rational::one();
        let mut acc = Rational::zero();
        for (k, a) in p.terms() {
            acc += a * self.moment(k, &one)?;
        }
        Ok(acc)
    }

    /// Pointwise value; the indicator is taken as 1 at `x = s`.
    pub fn eval(&self, x: &Rational) -> Rational {
        match self {
            Target::Poly(p) => p.eval(x),
            Target::IndicatorTail(s) => {
                if x >= s {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            Target::RampTail(a) => {
                if x > a {
                    x - a
                } else {
                    Rational::zero()
                }
            }
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        match self {
            Target::Poly(p) => p.terms().map(|(k, a)| a.to_f64() * x.powi(k as i32)).sum(),
            Target::IndicatorTail(s) => {
                if x >= s.to_f64() {
                    1.0
                } else {
                    0.0
                }
            }
            Target::RampTail(a) => (x - a.to_f64()).max(0.0),
        }
    }
}

/// Free-function form of [`Target::moment`].
pub fn moment(t: &Target, k: u32, u: &Rational) -> Result<Rational> {
    t.moment(k, u)
}

/// Free-function form of [`Target::norm_sq`].
pub fn norm_sq(t: &Target, u: &Rational) -> Result<Rational> {
    t.norm_sq(u)
}
