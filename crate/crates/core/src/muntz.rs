//! Drifting monomial windows `{n, …, n+N_n}`, exact projections onto their
//! spans, and the sweeps built on them.
//!
//! Everything is parameterised by a rational `ρ`; the vanishing threshold is
//! `s = ρ²`, which keeps every quantity in the pipeline rational.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{solve_exact, Rational};
use crate::gram::{gram_matrix, ExponentSet};
use crate::l2poly::{Polynomial, Target};
use crate::operators::MonomialOperator;

/// The exponent block `{n, n+1, …, n+big_n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DriftWindow {
    pub n: u32,
    pub big_n: u32,
}

impl DriftWindow {
    pub fn new(n: u32, big_n: u32) -> Self {
        DriftWindow { n, big_n }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<u32> {
        self.n..=self.n + self.big_n
    }

    pub fn exponent_set(&self) -> ExponentSet {
        ExponentSet::consecutive(self.n, self.big_n + 1)
    }

    /// Share of `{0, …, n+N}` missing from the window: `n / (n + N + 1)`.
    pub fn rho(&self) -> Rational {
        Rational::new(i64::from(self.n), i64::from(self.n + self.big_n + 1)).expect("positive")
    }
}

pub fn rho(w: &DriftWindow) -> Rational {
    w.rho()
}

/// `n ↦ N_n = round(n(1−ρ)/ρ)`, so that `n/(n+N_n) → ρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSchedule {
    rho_target: Rational,
}

impl WindowSchedule {
    pub fn new(rho_target: Rational) -> Result<Self> {
        if !rho_target.is_positive() || rho_target > 1 {
            return Err(Error::Domain(format!(
                "rho = {rho_target} must lie in (0, 1]"
            )));
        }
        Ok(WindowSchedule { rho_target })
    }

    pub fn rho_target(&self) -> &Rational {
        &self.rho_target
    }

    pub fn rule(&self, n: u32) -> u32 {
        let one = Rational::one();
        let width = Rational::from(n) * (&one - &self.rho_target) / &self.rho_target;
        u32::try_from(width.round()).expect("window width fits in u32")
    }

    pub fn window(&self, n: u32) -> DriftWindow {
        DriftWindow::new(n, self.rule(n))
    }
}

pub fn schedule_for_rho(rho_target: &Rational, n: u32) -> Result<DriftWindow> {
    Ok(WindowSchedule::new(rho_target.clone())?.window(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub poly: Polynomial,
    pub dist_sq: Rational,
}

/// Orthogonal projection of `t` onto `span{x^k : k ∈ degrees}` via the exact
/// normal equations.
pub fn project_onto(t: &Target, degrees: &[u32]) -> Result<Projection> {
    let one = Rational::one();
    let norm = t.norm_sq(&one)?;
    let e = ExponentSet::from_integers(degrees.iter().copied())?;
    let rhs = degrees
        .iter()
        .map(|&k| t.moment(k, &one))
        .collect::<Result<Vec<_>>>()?;
    let coeffs = solve_exact(&gram_matrix(&e), &rhs).map_err(|err| match err {
        Error::Singular { .. } => Error::Internal(format!("singular Gram matrix for {degrees:?}")),
        other => other,
    })?;
    let captured: Rational = coeffs.iter().zip(&rhs).map(|(c, b)| c * b).sum();
    Ok(Projection {
        poly: Polynomial::from_terms(degrees.iter().copied().zip(coeffs)),
        dist_sq: norm - captured,
    })
}

pub fn project(t: &Target, w: &DriftWindow) -> Result<Projection> {
    let degrees: Vec<u32> = w.degrees().collect();
    project_onto(t, &degrees)
}

/// One line of experiment output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub experiment: String,
    pub n: u32,
    #[serde(rename = "N_n")]
    pub big_n: u32,
    pub rho_n: Rational,
    pub dist_sq: Rational,
    pub leak_sq: Option<Rational>,
    pub sup_err: Option<f64>,
}

impl SweepRecord {
    fn new(experiment: &str, w: &DriftWindow, dist_sq: Rational) -> Self {
        SweepRecord {
            experiment: experiment.to_string(),
            n: w.n,
            big_n: w.big_n,
            rho_n: w.rho(),
            dist_sq,
            leak_sq: None,
            sup_err: None,
        }
    }
}

fn check_n_max(n_max: u32) -> Result<()> {
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    Ok(())
}

fn check_open_rho(rho: &Rational) -> Result<()> {
    if !rho.is_positive() || *rho >= 1 {
        return Err(Error::Domain(format!("rho = {rho} must lie in (0, 1)")));
    }
    Ok(())
}

/// Runs `f` for `n = 1..=n_max` in parallel; results come back in order of `n`.
fn sweep<F>(n_max: u32, f: F) -> Result<Vec<SweepRecord>>
where
    F: Fn(u32) -> Result<SweepRecord> + Sync + Send,
{
    check_n_max(n_max)?;
    (1..=n_max).into_par_iter().map(&f).collect()
}

/// Exact `dist(t, M_n)²` for `n = 1..=n_max`.
pub fn distance_sweep(t: &Target, sched: &WindowSchedule, n_max: u32) -> Result<Vec<SweepRecord>> {
    sweep(n_max, |n| {
        let w = sched.window(n);
        Ok(SweepRecord::new("sweep", &w, project(t, &w)?.dist_sq))
    })
}

/// Projects `χ_[s,1]` (with `s = ρ²`) onto each window, applies `T`, and
/// measures how much of the image lives on `[0, s]`.
pub fn vanishing_preservation_experiment(
    t: &MonomialOperator,
    rho: &Rational,
    n_max: u32,
) -> Result<Vec<SweepRecord>> {
    check_open_rho(rho)?;
    let s = rho.pow(2);
    let target = Target::indicator_tail(s.clone())?;
    let sched = WindowSchedule::new(rho.clone())?;
    let name = format!("vanish:{}", t.name());
    sweep(n_max, |n| {
        let w = sched.window(n);
        let proj = project(&target, &w)?;
        let image = t.apply(&proj.poly);
        let mut rec = SweepRecord::new(&name, &w, proj.dist_sq);
        rec.leak_sq = Some(Target::Poly(image).norm_sq(&s)?);
        Ok(rec)
    })
}

/// `((x − a)⁺)²` on the nodes `i/den`, exactly.
fn squared_ramp_at(a: &Rational, nodes: &[i64], den: i64) -> Vec<Rational> {
    let den = Rational::integer(den);
    nodes
        .iter()
        .map(|&i| {
            let x = Rational::integer(i) / &den;
            if &x > a {
                (x - a).pow(2)
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// Approximates `f = ((x−ρ²)⁺)²` by `V p_n`, where `p_n` is the projection of
/// `g = f' = 2(x−ρ²)⁺` onto the `n`-th window. The error is evaluated exactly
/// at the grid nodes `i/(grid_points−1)`; only the maximum is rounded.
pub fn continuous_case_experiment(
    rho: &Rational,
    n_max: u32,
    grid_points: u32,
) -> Result<Vec<SweepRecord>> {
    check_open_rho(rho)?;
    if grid_points < 2 {
        return Err(Error::Domain("grid_points must be at least 2".into()));
    }
    let a = rho.pow(2);
    let ramp = Target::ramp_tail(a.clone())?;
    let sched = WindowSchedule::new(rho.clone())?;
    let den = i64::from(grid_points - 1);
    let nodes: Vec<i64> = (0..=den).collect();
    let f_vals = squared_ramp_at(&a, &nodes, den);
    let two = Rational::from(2u32);
    let volterra = MonomialOperator::volterra();
    sweep(n_max, |n| {
        let w = sched.window(n);
        let proj = project(&ramp, &w)?;
        let g_n = proj.poly.scale(&two);
        let vals = volterra.apply(&g_n).eval_at_fractions(&nodes, den);
        let sup = vals
            .iter()
            .zip(&f_vals)
            .map(|(v, f)| (v - f).abs())
            .max()
            .unwrap_or_default();
        let mut rec = SweepRecord::new("continuous", &w, &proj.dist_sq * two.pow(2));
        rec.sup_err = Some(sup.to_f64());
        Ok(rec)
    })
}
