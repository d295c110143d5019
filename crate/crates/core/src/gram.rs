//! Gram matrices of monomials `x^α` on [0,1], their determinants by three
//! independent routes, and the bordered-determinant distance formula.
//!
//! The three determinant routes are Bareiss elimination on the assembled
//! matrix, the generic Cauchy product formula on the nodes
//! `x_i = α_i + 1/2`, `y_j = −(α_j + 1/2)`, and the specialised closed form
//! `Π_{j<i} (α_i − α_j)² / Π_{i,j} (α_i + α_j + 1)`.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{bareiss_determinant, rat, RatMatrix, Rational};
use crate::l2poly::Target;

/// Distinct exponents, each greater than −1/2 so that `x^α ∈ L²[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSet {
    exponents: Vec<Rational>,
}

impl ExponentSet {
    pub fn new(exponents: Vec<Rational>) -> Result<Self> {
        let floor = rat(-1, 2);
        for (i, a) in exponents.iter().enumerate() {
            if *a <= floor {
                return Err(Error::Validation(format!("exponent {a} is not above -1/2")));
            }
            if exponents[..i].contains(a) {
                return Err(Error::Validation(format!("duplicate exponent {a}")));
            }
        }
        Ok(ExponentSet { exponents })
    }

    pub fn from_integers(exponents: impl IntoIterator<Item = u32>) -> Result<Self> {
        Self::new(exponents.into_iter().map(Rational::from).collect())
    }

    /// `{start, start+1, …, start+count−1}`.
    pub fn consecutive(start: u32, count: u32) -> Self {
        ExponentSet {
            exponents: (start..start + count).map(Rational::from).collect(),
        }
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn contains(&self, alpha: &Rational) -> bool {
        self.exponents.contains(alpha)
    }

    pub fn with(&self, alpha: Rational) -> Result<Self> {
        let mut e = vec![alpha];
        e.extend(self.exponents.iter().cloned());
        Self::new(e)
    }

    /// The Cauchy nodes whose Cauchy matrix is this set's Gram matrix.
    pub fn cauchy_nodes(&self) -> (Vec<Rational>, Vec<Rational>) {
        let half = rat(1, 2);
        let xs: Vec<Rational> = self.exponents.iter().map(|a| a + &half).collect();
        let ys = xs.iter().map(|x| -x).collect();
        (xs, ys)
    }
}

pub fn gram_matrix(e: &ExponentSet) -> RatMatrix {
    let a = e.exponents();
    let one = Rational::one();
    RatMatrix::from_fn(a.len(), a.len(), |i, j| {
        (&a[i] + &a[j] + &one)
            .recip()
            .expect("exponents above -1/2")
    })
}

pub fn cauchy_matrix(xs: &[Rational], ys: &[Rational]) -> Result<RatMatrix> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(Error::Dimension(format!(
            "Cauchy nodes need equal nonzero lengths, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    check_poles(xs, ys)?;
    Ok(RatMatrix::from_fn(xs.len(), ys.len(), |i, j| {
        (&xs[i] - &ys[j]).recip().expect("poles checked")
    }))
}

fn check_poles(xs: &[Rational], ys: &[Rational]) -> Result<()> {
    for (i, x) in xs.iter().enumerate() {
        if let Some(j) = ys.iter().position(|y| y == x) {
            return Err(Error::Pole { i, j });
        }
    }
    Ok(())
}

/// `det [1/(x_i − y_j)] = Π_{j<i} (x_i − x_j)(y_j − y_i) / Π_{i,j} (x_i − y_j)`.
pub fn cauchy_determinant(xs: &[Rational], ys: &[Rational]) -> Result<Rational> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(Error::Dimension(format!(
            "Cauchy nodes need equal nonzero lengths, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    check_poles(xs, ys)?;
    let n = xs.len();
    let mut num = Rational::one();
    for i in 0..n {
        for j in 0..i {
            num *= (&xs[i] - &xs[j]) * (&ys[j] - &ys[i]);
        }
    }
    let mut den = Rational::one();
    for x in xs {
        for y in ys {
            den *= x - y;
        }
    }
    Ok(num / den)
}

pub fn gram_det_closed_form(e: &ExponentSet) -> Rational {
    let a = e.exponents();
    let one = Rational::one();
    let mut num = Rational::one();
    for i in 0..a.len() {
        for j in 0..i {
            num *= (&a[i] - &a[j]).pow(2);
        }
    }
    let mut den = Rational::one();
    for ai in a {
        for aj in a {
            den *= ai + aj + &one;
        }
    }
    num / den
}

pub fn gram_det_bareiss(e: &ExponentSet) -> Rational {
    bareiss_determinant(&gram_matrix(e)).expect("Gram matrices are square")
}

/// `dist(t, span{x^α})² = det G[t, x^α₁, …] / det G[x^α₁, …]`, both
/// determinants by elimination. An empty set gives `‖t‖²`.
pub fn distance_sq_via_gram(t: &Target, e: &ExponentSet) -> Result<Rational> {
    let norm = t.norm_sq(&Rational::one())?;
    if e.is_empty() {
        return Ok(norm);
    }
    let border = e
        .exponents()
        .iter()
        .map(|a| t.moment_exponent(a))
        .collect::<Result<Vec<_>>>()?;
    let g = gram_matrix(e);
    let n = e.len();
    let bordered = RatMatrix::from_fn(n + 1, n + 1, |i, j| match (i, j) {
        (0, 0) => norm.clone(),
        (0, j) => border[j - 1].clone(),
        (i, 0) => border[i - 1].clone(),
        (i, j) => g[(i - 1, j - 1)].clone(),
    });
    let den = bareiss_determinant(&g)?;
    if den.is_zero() {
        return Err(Error::Internal(
            "singular Gram matrix for a valid exponent set".into(),
        ));
    }
    Ok(bareiss_determinant(&bordered)? / den)
}

/// Distance from `x^α₀` to a monomial span via the closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialDistance {
    pub dist_sq: Rational,
    /// `α₀` is itself in the set; the distance is 0 by convention.
    pub in_span: bool,
}

/// `dist(x^α₀, span{x^α_i})² = 1/(2α₀+1) · Π (α_i − α₀)² / (α_i + α₀ + 1)²`.
pub fn monomial_distance_sq_closed_form(
    alpha0: &Rational,
    e: &ExponentSet,
) -> Result<MonomialDistance> {
    if *alpha0 <= rat(-1, 2) {
        return Err(Error::Validation(format!(
            "exponent {alpha0} is not above -1/2"
        )));
    }
    if e.contains(alpha0) {
        return Ok(MonomialDistance {
            dist_sq: Rational::zero(),
            in_span: true,
        });
    }
    let one = Rational::one();
    let mut acc = (alpha0 + alpha0 + &one).recip()?;
    for a in e.exponents() {
        acc *= ((a - alpha0) / (a + alpha0 + &one)).pow(2);
    }
    Ok(MonomialDistance {
        dist_sq: acc,
        in_span: false,
    })
}

/// Bordered Gram ratio for a monomial target with any admissible exponent.
pub fn monomial_distance_sq_via_gram(alpha0: &Rational, e: &ExponentSet) -> Result<Rational> {
    let bordered = e.with(alpha0.clone())?;
    Ok(gram_det_bareiss(&bordered) / gram_det_bareiss(e))
}

/// Exact determinants against a binary64 elimination on the same Gram matrix.
#[derive(Debug, Clone, Serialize)]
pub struct ConditioningReport {
    pub exponents: Vec<Rational>,
    pub det_closed: Rational,
    pub det_bareiss: Rational,
    pub det_float: f64,
    pub rel_err_float: f64,
    /// Wall-clock; not deterministic.
    pub t_exact_ns: u64,
    pub t_float_ns: u64,
}

/// Gaussian elimination with partial pivoting in binary64.
pub fn det_partial_pivot(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .expect("nonempty range");
        if a[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in bottom {
            let f = row[k] / pivot[k];
            for (x, p) in row[k + 1..].iter_mut().zip(&pivot[k + 1..]) {
                *x -= f * p;
            }
        }
    }
    det
}

pub fn conditioning_report(e: &ExponentSet) -> ConditioningReport {
    let det_closed = gram_det_closed_form(e);

    let start = Instant::now();
    let det_bareiss = gram_det_bareiss(e);
    let t_exact_ns = start.elapsed().as_nanos() as u64;

    let start = Instant::now();
    let rows = gram_matrix(e).to_f64_rows();
    let det_float = det_partial_pivot(rows);
    let t_float_ns = start.elapsed().as_nanos() as u64;

    let exact = det_bareiss.to_f64();
    let rel_err_float = ((det_float - exact) / exact).abs();
    ConditioningReport {
        exponents: e.exponents().to_vec(),
        det_closed,
        det_bareiss,
        det_float,
        rel_err_float,
        t_exact_ns,
        t_float_ns,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::stream;
    use crate::l2poly::Polynomial;
    use rand::Rng;

    fn ints(v: &[u32]) -> ExponentSet {
        ExponentSet::from_integers(v.iter().copied()).unwrap()
    }

    #[test]
    fn gram_examples() {
        let g = gram_matrix(&ints(&[0, 1]));
        assert_eq!(g.entries(), &[rat(1, 1), rat(1, 2), rat(1, 2), rat(1, 3)]);
        assert_eq!(gram_matrix(&ints(&[0])).entries(), &[rat(1, 1)]);
        let half = ExponentSet::new(vec![rat(1, 2)]).unwrap();
        assert_eq!(gram_matrix(&half).entries(), &[rat(1, 2)]);
    }

    #[test]
    fn exponent_validation() {
        assert!(matches!(
            ExponentSet::from_integers([1, 2, 1]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            ExponentSet::new(vec![rat(-1, 2)]),
            Err(Error::Validation(_))
        ));
        assert!(ExponentSet::new(vec![rat(-1, 3)]).is_ok());
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(
            cauchy_determinant(&[rat(3, 1)], &[rat(1, 1)]).unwrap(),
            rat(1, 2)
        );
        let d = cauchy_determinant(&[rat(1, 1), rat(2, 1)], &[rat(0, 1), rat(-1, 1)]).unwrap();
        assert_eq!(d, rat(1, 12));
        assert_eq!(
            cauchy_determinant(&[rat(1, 1), rat(2, 1)], &[rat(0, 1), rat(1, 1)]),
            Err(Error::Pole { i: 0, j: 1 })
        );
        assert!(matches!(
            cauchy_determinant(&[], &[]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            cauchy_determinant(&[rat(1, 1)], &[]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn cauchy_random_4x4_matches_elimination() {
        let mut rng = stream(99, 0);
        let mut done = 0;
        while done < 10 {
            let xs: Vec<Rational> = (0..4)
                .map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=7)))
                .collect();
            let ys: Vec<Rational> = (0..4)
                .map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=7)))
                .collect();
            let Ok(m) = cauchy_matrix(&xs, &ys) else {
                continue;
            };
            assert_eq!(
                cauchy_determinant(&xs, &ys).unwrap(),
                bareiss_determinant(&m).unwrap()
            );
            done += 1;
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(gram_det_closed_form(&ints(&[0])), rat(1, 1));
        assert_eq!(gram_det_closed_form(&ints(&[0, 1])), rat(1, 12));
        assert_eq!(gram_det_closed_form(&ints(&[0, 1, 2])), rat(1, 2160));
        assert_eq!(gram_det_closed_form(&ints(&[])), rat(1, 1));
    }

    #[test]
    fn three_routes_agree_on_fractional_exponents() {
        let e = ExponentSet::new(vec![rat(-1, 3), rat(1, 2), rat(7, 4), rat(3, 1)]).unwrap();
        let (xs, ys) = e.cauchy_nodes();
        let closed = gram_det_closed_form(&e);
        assert_eq!(closed, gram_det_bareiss(&e));
        assert_eq!(closed, cauchy_determinant(&xs, &ys).unwrap());
        assert!(closed.is_positive());
    }

    #[test]
    fn distance_examples() {
        let one = Target::one();
        assert_eq!(distance_sq_via_gram(&one, &ints(&[1])).unwrap(), rat(1, 4));
        assert_eq!(distance_sq_via_gram(&one, &ints(&[0])).unwrap(), rat(0, 1));
        let chi = Target::indicator_tail(rat(1, 4)).unwrap();
        assert_eq!(distance_sq_via_gram(&chi, &ints(&[0])).unwrap(), rat(3, 16));
        assert_eq!(distance_sq_via_gram(&chi, &ints(&[])).unwrap(), rat(3, 4));
    }

    #[test]
    fn distance_capability_error() {
        let chi = Target::indicator_tail(rat(1, 4)).unwrap();
        let e = ExponentSet::new(vec![rat(1, 2)]).unwrap();
        assert!(matches!(
            distance_sq_via_gram(&chi, &e),
            Err(Error::Capability(_))
        ));
        // polynomial targets have exact fractional moments
        let x = Target::Poly(Polynomial::x_pow(1));
        assert!(distance_sq_via_gram(&x, &e).is_ok());
    }

    #[test]
    fn closed_form_distance_examples() {
        let d = monomial_distance_sq_closed_form(&rat(0, 1), &ints(&[1])).unwrap();
        assert_eq!(d.dist_sq, rat(1, 4));
        assert!(!d.in_span);
        for (n, big_n) in [(1u32, 3u32), (4, 0), (7, 5)] {
            let e = ExponentSet::consecutive(n, big_n + 1);
            let d = monomial_distance_sq_closed_form(&rat(0, 1), &e).unwrap();
            assert_eq!(
                d.dist_sq,
                rat(i64::from(n), i64::from(n + big_n + 1)).pow(2)
            );
        }
        let e = ExponentSet::new(vec![rat(3, 2)]).unwrap();
        let d = monomial_distance_sq_closed_form(&rat(1, 2), &e).unwrap();
        assert_eq!(d.dist_sq, rat(1, 18));
        assert_eq!(
            monomial_distance_sq_via_gram(&rat(1, 2), &e).unwrap(),
            rat(1, 18)
        );
        let d = monomial_distance_sq_closed_form(&rat(3, 2), &e).unwrap();
        assert!(d.in_span);
        assert!(d.dist_sq.is_zero());
        assert!(monomial_distance_sq_closed_form(&rat(-1, 2), &e).is_err());
    }

    #[test]
    fn distance_consistency_for_integer_monomials() {
        let e = ints(&[2, 3, 5, 8]);
        for a0 in [0u32, 1, 4, 6, 7, 11] {
            let via_gram = distance_sq_via_gram(&Target::Poly(Polynomial::x_pow(a0)), &e).unwrap();
            let closed = monomial_distance_sq_closed_form(&Rational::from(a0), &e).unwrap();
            assert_eq!(via_gram, closed.dist_sq, "alpha0 = {a0}");
        }
    }

    #[test]
    fn float_determinant_small() {
        let d = det_partial_pivot(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(d, -1.0);
        assert_eq!(det_partial_pivot(vec![]), 1.0);
    }

    #[test]
    fn conditioning_examples() {
        let r = conditioning_report(&ints(&[0]));
        assert_eq!(r.det_closed, rat(1, 1));
        assert_eq!(r.det_bareiss, rat(1, 1));
        assert_eq!(r.det_float, 1.0);

        let r = conditioning_report(&ints(&[0, 1]));
        assert!(r.rel_err_float < 1e-14);

        let r = conditioning_report(&ExponentSet::consecutive(0, 13));
        assert_eq!(r.det_closed, r.det_bareiss);
        assert!(r.rel_err_float.is_finite());
        let json = serde_json::to_value(&r).unwrap();
        for key in [
            "exponents",
            "det_closed",
            "det_bareiss",
            "det_float",
            "rel_err_float",
            "t_exact_ns",
            "t_float_ns",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["exponents"][1], "1/1");
    }
}
