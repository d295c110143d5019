//! Experiment runner: one experiment per invocation, JSON-lines or CSV out.
//!
//! Exit codes: 0 when every check in the run holds, 1 when any fails,
//! 2 on usage errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rand::Rng;
use serde::Serialize;

use hardy_muntz::bernstein::{bernstein_approximant, bernstein_basis, min_support_degree};
use hardy_muntz::corpus::{seeded_corpus, stream};
use hardy_muntz::exactnum::bareiss_determinant;
use hardy_muntz::gram::{
    cauchy_determinant, cauchy_matrix, conditioning_report, distance_sq_via_gram, gram_det_bareiss,
    gram_det_closed_form, ExponentSet,
};
use hardy_muntz::l2poly::inner_product;
use hardy_muntz::muntz::{
    continuous_case_experiment, distance_sweep, project, vanishing_preservation_experiment,
    WindowSchedule,
};
use hardy_muntz::operators::{
    builtin_operator, hardy_identity_terms, operator_norm_lower_bound, sup_contraction_check,
    BUILTIN_NAMES,
};
use hardy_muntz::{rat, MonomialOperator, Polynomial, Rational, Target};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    IdentityCheck,
    HardyNorm,
    GramDet,
    CauchyCheck,
    Distance,
    Sweep,
    Vanish,
    Continuous,
    Bernstein,
    Conditioning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetKind {
    /// the constant function 1
    One,
    /// χ_[ρ²,1]
    Indicator,
    /// (x − ρ²)⁺
    Ramp,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "hmz",
    version,
    about = "Exact experiments with monomial operators on L2[0,1]"
)]
pub struct RunConfig {
    /// Experiment to run.
    #[arg(value_enum)]
    pub experiment: Experiment,

    #[arg(long, default_value_t = 7)]
    pub seed: u64,

    /// Maximum polynomial degree (corpus experiments), largest Bernstein
    /// degree, maximum window width (gram-det), matrix size (cauchy-check),
    /// or top exponent (conditioning).
    #[arg(long)]
    pub degree: Option<u32>,

    #[arg(long, default_value_t = 200)]
    pub trials: u32,

    #[arg(long, default_value_t = 40)]
    pub n_max: u32,

    /// Target ρ as "num/den"; the vanishing threshold is ρ².
    #[arg(long, default_value = "1/2", value_parser = parse_rational)]
    pub rho: Rational,

    #[arg(long, default_value_t = 1001)]
    pub grid_points: u32,

    #[arg(long, value_enum, default_value_t = TargetKind::One)]
    pub target: TargetKind,

    #[arg(long, default_value = "hardy")]
    pub operator: String,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write records here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

const MAX_DEGREE: u32 = 60;
const MAX_N: u32 = 400;

impl RunConfig {
    fn degree_or(&self, default: u32) -> u32 {
        self.degree.unwrap_or(default)
    }

    pub fn validate(&self) -> Result<(), String> {
        use Experiment::*;
        if !self.rho.is_positive() || self.rho >= 1 {
            return Err(format!("--rho {} must lie in (0, 1)", self.rho));
        }
        if let Some(d) = self.degree {
            if d > MAX_DEGREE {
                return Err(format!("--degree {d} exceeds {MAX_DEGREE}"));
            }
        }
        match self.experiment {
            Distance | Sweep | Vanish | Continuous | GramDet => {
                if self.n_max == 0 || self.n_max > MAX_N {
                    return Err(format!("--n-max {} must lie in [1, {MAX_N}]", self.n_max));
                }
            }
            IdentityCheck | HardyNorm | CauchyCheck => {
                if self.trials == 0 {
                    return Err("--trials must be at least 1".into());
                }
            }
            Bernstein | Conditioning => {}
        }
        if matches!(self.experiment, HardyNorm | Continuous) && self.grid_points < 2 {
            return Err("--grid-points must be at least 2".into());
        }
        if self.experiment == CauchyCheck && self.degree == Some(0) {
            return Err("--degree must be at least 1 for cauchy-check".into());
        }
        if !BUILTIN_NAMES.contains(&self.operator.as_str()) {
            return Err(format!(
                "unknown operator {:?}; expected one of {BUILTIN_NAMES:?}",
                self.operator
            ));
        }
        Ok(())
    }
}

/// Collects output records and whether all checks passed.
struct Report<W: Write> {
    sink: Sink<W>,
    ok: bool,
}

enum Sink<W: Write> {
    Json(W),
    Csv(Box<csv::Writer<W>>),
}

impl<W: Write> Report<W> {
    fn new(format: Format, w: W) -> Self {
        let sink = match format {
            Format::Json => Sink::Json(w),
            Format::Csv => Sink::Csv(Box::new(csv::Writer::from_writer(w))),
        };
        Report { sink, ok: true }
    }

    fn emit<R: Serialize>(&mut self, rec: &R) -> io::Result<()> {
        match &mut self.sink {
            Sink::Json(w) => {
                serde_json::to_writer(&mut *w, rec)?;
                writeln!(w)
            }
            Sink::Csv(w) => w.serialize(rec).map_err(io::Error::other),
        }
    }

    fn check(&mut self, cond: bool) -> bool {
        self.ok &= cond;
        cond
    }

    fn finish(self) -> io::Result<bool> {
        match self.sink {
            Sink::Json(mut w) => w.flush()?,
            Sink::Csv(mut w) => w.flush()?,
        }
        Ok(self.ok)
    }
}

#[derive(Serialize)]
struct IdentityRecord {
    experiment: &'static str,
    index: usize,
    degree: Option<u32>,
    lhs: Rational,
    contraction_term: Rational,
    integral_sq: Rational,
    holds: bool,
}

#[derive(Serialize)]
struct HardyNormRecord {
    experiment: &'static str,
    index: usize,
    norm_sq: Rational,
    hardy_norm_sq: Rational,
    contraction_sq: Rational,
    sup_hp: f64,
    sup_p: f64,
    holds: bool,
}

#[derive(Serialize)]
struct NormBoundRecord {
    experiment: &'static str,
    operator: String,
    lower_bound: f64,
}

#[derive(Serialize)]
struct GramDetRecord {
    experiment: &'static str,
    n: u32,
    #[serde(rename = "N")]
    big_n: u32,
    det_closed: Rational,
    det_bareiss: Rational,
    det_cauchy: Rational,
    agree: bool,
}

#[derive(Serialize)]
struct CauchyRecord {
    experiment: &'static str,
    index: u32,
    size: usize,
    det_closed: Rational,
    det_bareiss: Rational,
    agree: bool,
}

#[derive(Serialize)]
struct DistanceRecord {
    experiment: &'static str,
    n: u32,
    #[serde(rename = "N_n")]
    big_n: u32,
    rho_n: Rational,
    dist_sq: Rational,
    dist_sq_normal_eq: Rational,
    agree: bool,
}

#[derive(Serialize)]
struct BernsteinRecord {
    experiment: &'static str,
    n: u32,
    partition_of_unity: bool,
    linear_precision: bool,
    quadratic_law: bool,
    support_containment: bool,
}

fn target_for(kind: TargetKind, rho: &Rational) -> hardy_muntz::Result<Target> {
    let s = rho.pow(2);
    match kind {
        TargetKind::One => Ok(Target::one()),
        TargetKind::Indicator => Target::indicator_tail(s),
        TargetKind::Ramp => Target::ramp_tail(s),
    }
}

fn run<W: Write>(cfg: &RunConfig, out: &mut Report<W>) -> Result<(), Box<dyn std::error::Error>> {
    match cfg.experiment {
        Experiment::IdentityCheck => {
            for (index, p) in seeded_corpus(cfg.seed, cfg.trials as usize, cfg.degree_or(20))
                .iter()
                .enumerate()
            {
                let t = hardy_identity_terms(p);
                let holds = out.check(t.holds());
                out.emit(&IdentityRecord {
                    experiment: "identity-check",
                    index,
                    degree: p.degree(),
                    lhs: t.lhs,
                    contraction_term: t.contraction_term,
                    integral_sq: t.integral_sq,
                    holds,
                })?;
            }
        }
        Experiment::HardyNorm => {
            let degree = cfg.degree_or(20);
            let h = MonomialOperator::hardy();
            let four = Rational::from(4u32);
            for (index, p) in seeded_corpus(cfg.seed, cfg.trials as usize, degree)
                .iter()
                .enumerate()
            {
                let norm_sq = inner_product(p, p);
                let hp = h.apply(p);
                let hardy_norm_sq = inner_product(&hp, &hp);
                let r = p - &hp;
                let contraction_sq = inner_product(&r, &r);
                let (sup_hp, sup_p) = sup_contraction_check(p, cfg.grid_points)?;
                let holds = hardy_norm_sq <= &four * &norm_sq
                    && contraction_sq <= norm_sq
                    && sup_hp <= sup_p + 1e-9;
                out.check(holds);
                out.emit(&HardyNormRecord {
                    experiment: "hardy-norm",
                    index,
                    norm_sq,
                    hardy_norm_sq,
                    contraction_sq,
                    sup_hp,
                    sup_p,
                    holds,
                })?;
            }
            for name in BUILTIN_NAMES {
                let op = builtin_operator(name)?;
                let lower_bound = operator_norm_lower_bound(&op, degree, cfg.trials, cfg.seed)?;
                if name == "hardy" {
                    out.check((1.0..=2.0).contains(&lower_bound));
                }
                out.emit(&NormBoundRecord {
                    experiment: "hardy-norm-bound",
                    operator: name.to_string(),
                    lower_bound,
                })?;
            }
        }
        Experiment::GramDet => {
            for n in 1..=cfg.n_max {
                for big_n in 0..=cfg.degree_or(10) {
                    let e = ExponentSet::consecutive(n, big_n + 1);
                    let (xs, ys) = e.cauchy_nodes();
                    let det_closed = gram_det_closed_form(&e);
                    let det_bareiss = gram_det_bareiss(&e);
                    let det_cauchy = cauchy_determinant(&xs, &ys)?;
                    let agree = out.check(det_closed == det_bareiss && det_bareiss == det_cauchy);
                    out.emit(&GramDetRecord {
                        experiment: "gram-det",
                        n,
                        big_n,
                        det_closed,
                        det_bareiss,
                        det_cauchy,
                        agree,
                    })?;
                }
            }
        }
        Experiment::CauchyCheck => {
            let max_size = cfg.degree_or(6) as usize;
            let mut index = 0;
            while index < cfg.trials {
                let mut rng = stream(cfg.seed, u64::from(index));
                let size = 1 + (index as usize) % max_size;
                let xs = distinct_nodes(&mut rng, size);
                let ys = distinct_nodes(&mut rng, size);
                // redraw on a pole by advancing the stream index
                let Ok(m) = cauchy_matrix(&xs, &ys) else {
                    index += 1;
                    continue;
                };
                let det_closed = cauchy_determinant(&xs, &ys)?;
                let det_bareiss = bareiss_determinant(&m)?;
                let agree = out.check(det_closed == det_bareiss);
                out.emit(&CauchyRecord {
                    experiment: "cauchy-check",
                    index,
                    size,
                    det_closed,
                    det_bareiss,
                    agree,
                })?;
                index += 1;
            }
        }
        Experiment::Distance => {
            let t = target_for(cfg.target, &cfg.rho)?;
            let w = WindowSchedule::new(cfg.rho.clone())?.window(cfg.n_max);
            let dist_sq = distance_sq_via_gram(&t, &w.exponent_set())?;
            let dist_sq_normal_eq = project(&t, &w)?.dist_sq;
            let agree = out.check(dist_sq == dist_sq_normal_eq);
            out.emit(&DistanceRecord {
                experiment: "distance",
                n: w.n,
                big_n: w.big_n,
                rho_n: w.rho(),
                dist_sq,
                dist_sq_normal_eq,
                agree,
            })?;
        }
        Experiment::Sweep => {
            let t = target_for(cfg.target, &cfg.rho)?;
            let sched = WindowSchedule::new(cfg.rho.clone())?;
            for r in distance_sweep(&t, &sched, cfg.n_max)? {
                if cfg.target == TargetKind::One {
                    out.check(r.dist_sq == r.rho_n.pow(2));
                }
                out.emit(&r)?;
            }
        }
        Experiment::Vanish => {
            let op = builtin_operator(&cfg.operator)?;
            let recs = vanishing_preservation_experiment(&op, &cfg.rho, cfg.n_max)?;
            if let (Some(a), Some(b)) = (recs.first(), recs.last()) {
                if recs.len() > 1 {
                    out.check(b.leak_sq < a.leak_sq);
                }
            }
            for r in &recs {
                out.emit(r)?;
            }
        }
        Experiment::Continuous => {
            let recs = continuous_case_experiment(&cfg.rho, cfg.n_max, cfg.grid_points)?;
            if let (Some(a), Some(b)) = (recs.first(), recs.last()) {
                if recs.len() > 1 {
                    out.check(b.sup_err < a.sup_err);
                }
            }
            for r in &recs {
                out.emit(r)?;
            }
        }
        Experiment::Bernstein => {
            for n in 0..=cfg.degree_or(12) {
                let laws = bernstein_laws(n)?;
                out.check(
                    laws.partition_of_unity
                        && laws.linear_precision
                        && laws.quadratic_law
                        && laws.support_containment,
                );
                out.emit(&laws)?;
            }
        }
        Experiment::Conditioning => {
            let e = ExponentSet::consecutive(0, cfg.degree_or(12) + 1);
            let r = conditioning_report(&e);
            out.check(r.det_closed == r.det_bareiss);
            out.emit(&r)?;
        }
    }
    Ok(())
}

fn distinct_nodes<R: Rng>(rng: &mut R, size: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = Vec::with_capacity(size);
    while v.len() < size {
        let r = rat(rng.gen_range(-30..=30), rng.gen_range(1..=8));
        if !v.contains(&r) {
            v.push(r);
        }
    }
    v
}

fn bernstein_laws(n: u32) -> hardy_muntz::Result<BernsteinRecord> {
    let mut sum = Polynomial::zero();
    for k in 0..=n {
        sum = &sum + &bernstein_basis(k, n)?;
    }
    let partition_of_unity = sum == Polynomial::x_pow(0);
    let (linear_precision, quadratic_law) = if n == 0 {
        (true, true)
    } else {
        let nn = i64::from(n);
        let lin: Vec<Rational> = (0..=nn).map(|k| rat(k, nn)).collect();
        let sq: Vec<Rational> = (0..=nn).map(|k| rat(k * k, nn * nn)).collect();
        let inv = rat(1, nn);
        let quad = Polynomial::from_dense([Rational::zero(), inv.clone(), Rational::one() - inv]);
        (
            bernstein_approximant(&lin, n)? == Polynomial::x_pow(1),
            bernstein_approximant(&sq, n)? == quad,
        )
    };
    let mut support_containment = true;
    for m in 0..n {
        let samples: Vec<Rational> = (0..=n)
            .map(|k| {
                if k <= m {
                    Rational::zero()
                } else {
                    Rational::one()
                }
            })
            .collect();
        let b = bernstein_approximant(&samples, n)?;
        support_containment &= min_support_degree(&b).is_none_or(|d| d > m);
    }
    Ok(BernsteinRecord {
        experiment: "bernstein",
        n,
        partition_of_unity,
        linear_precision,
        quadratic_law,
        support_containment,
    })
}

/// Run a parsed configuration, writing records to `stdout` (or the configured
/// output file) and diagnostics to `stderr`. Returns the process exit code.
pub fn dispatch(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    if let Err(msg) = cfg.validate() {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    let result = match &cfg.output {
        Some(path) => match File::create(path) {
            Ok(f) => execute(cfg, BufWriter::new(f)),
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot create {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
        None => execute(cfg, stdout),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            let _ = writeln!(stderr, "{:?}: one or more checks failed", cfg.experiment);
            EXIT_CHECK_FAILED
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_CHECK_FAILED
        }
    }
}

fn execute<W: Write>(cfg: &RunConfig, w: W) -> Result<bool, Box<dyn std::error::Error>> {
    let mut report = Report::new(cfg.format, w);
    run(cfg, &mut report)?;
    Ok(report.finish()?)
}
