use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::gamma::{gamma_numeric, sqrt_two_pi, stirling_correction};
use super::quadrature::{quadrature, Domain};
use super::NumericError;
use crate::coeffs::{coefficients, LaplaceProblem, Route, ScaledCoefficients};
use crate::exact::Rational;
use crate::special::{
    diagonal_coefficients, gamma_problem, gamma_problem_second, stirling_closed_forms, StirlingForm,
};

/// Errors below this multiple of the reference error are excluded from order fits.
const NOISE_FACTOR: f64 = 10.0;
const MIN_FIT_POINTS: usize = 4;

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `Sum_{n<N} Gamma((n+beta)/alpha) c_sc[n] / (alpha a_0^((n+beta)/alpha)) lambda^(-(n+beta)/alpha)`.
pub fn partial_sum(
    p: &LaplaceProblem,
    c: &ScaledCoefficients,
    lambda: f64,
    n_terms: usize,
) -> Result<f64, NumericError> {
    Ok(terms(p, c, lambda, n_terms)?.iter().sum())
}

fn terms(
    p: &LaplaceProblem,
    c: &ScaledCoefficients,
    lambda: f64,
    n_terms: usize,
) -> Result<Vec<f64>, NumericError> {
    let a0 = p.a(0);
    if !a0.is_positive() {
        return Err(NumericError::Domain(format!("a_0 = {a0} must be positive for real powers")));
    }
    if !(lambda > 0.0) {
        return Err(NumericError::Domain(format!("lambda = {lambda} must be positive")));
    }
    if n_terms > c.c_sc.len() {
        return Err(NumericError::Insufficient { needed: n_terms, have: c.c_sc.len() });
    }
    let ln_a0 = to_f64(&a0).ln();
    let alpha = to_f64(&p.alpha);
    (0..n_terms)
        .map(|n| {
            let e = to_f64(&p.exponent(n));
            let g = gamma_numeric(e)?;
            Ok(g * to_f64(&c.c_sc[n]) / alpha * (-e * (ln_a0 + lambda.ln())).exp())
        })
        .collect()
}

/// `points` log-spaced values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points <= 1 {
        return vec![lo];
    }
    let (l, h) = (lo.ln(), hi.ln());
    (0..points).map(|i| (l + (h - l) * i as f64 / (points - 1) as f64).exp()).collect()
}

/// Least-squares slope of `ln err` against `ln x`, using only points whose error is
/// resolvable above the reference noise. `None` if fewer than four points remain or
/// they span less than `min_decades`.
pub fn fit_order(xs: &[f64], errs: &[f64], noise: &[f64], min_decades: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(errs)
        .zip(noise)
        .filter(|((_, &e), &n)| e > 0.0 && e.is_finite() && e > NOISE_FACTOR * n)
        .map(|((&x, &e), _)| (x.ln(), e.ln()))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return None;
    }
    let span = (pts.last()?.0 - pts.first()?.0) / std::f64::consts::LN_10;
    if span < min_decades {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// One numeric check over a grid; matrices are indexed `[grid point][term count]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub lambda_grid: Vec<f64>,
    pub term_counts: Vec<usize>,
    pub reference: Vec<f64>,
    pub reference_err: Vec<f64>,
    pub partial_sums: Vec<Vec<f64>>,
    pub abs_errors: Vec<Vec<f64>>,
    pub rel_errors: Vec<Vec<f64>>,
    /// Magnitude of the first omitted term, in the same normalization as `abs_errors`.
    pub omitted: Vec<Vec<f64>>,
    pub fitted_order: Vec<Option<f64>>,
    pub expected_order: Vec<f64>,
}

impl VerificationReport {
    /// `|error| <= max(2 |first omitted term|, reference error bound)` at one cell.
    pub fn within_bound(&self, i: usize, j: usize) -> bool {
        self.abs_errors[i][j] <= (2.0 * self.omitted[i][j]).max(self.reference_err[i])
    }

    pub fn all_within_bounds(&self) -> bool {
        (0..self.lambda_grid.len()).all(|i| (0..self.term_counts.len()).all(|j| self.within_bound(i, j)))
    }

    /// Every fitted order resolved and within `tol` of its expected value.
    pub fn orders_within(&self, tol: f64) -> bool {
        self.fitted_order
            .iter()
            .zip(&self.expected_order)
            .all(|(f, e)| matches!(f, Some(v) if (v - e).abs() <= tol))
    }

    pub fn column(&self, n_terms: usize) -> Option<usize> {
        self.term_counts.iter().position(|&n| n == n_terms)
    }

    pub fn to_csv(&self, header: bool) -> String {
        let mut out = String::new();
        if header {
            out.push_str("check,lambda,N,reference,partial_sum,abs_err,rel_err\n");
        }
        for (i, lambda) in self.lambda_grid.iter().enumerate() {
            for (j, n) in self.term_counts.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{},{},{:e},{:e},{:e},{:e}",
                    self.check,
                    lambda,
                    n,
                    self.reference[i],
                    self.partial_sums[i][j],
                    self.abs_errors[i][j],
                    self.rel_errors[i][j]
                );
            }
        }
        out
    }

    pub fn summary_json(&self) -> Value {
        let orders: Vec<Value> = self
            .term_counts
            .iter()
            .zip(&self.fitted_order)
            .zip(&self.expected_order)
            .map(|((n, f), e)| json!({ "N": n, "fitted_order": f, "expected_order": e }))
            .collect();
        json!({
            "check": self.check,
            "lambda_grid": self.lambda_grid,
            "within_bounds": self.all_within_bounds(),
            "orders": orders,
        })
    }
}

fn check_grid(grid: &[f64], min: f64) -> Result<(), NumericError> {
    if grid.is_empty() {
        return Err(NumericError::Domain("empty grid".into()));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(NumericError::Domain("grid must be strictly increasing".into()));
    }
    if !(grid[0] >= min) {
        return Err(NumericError::Domain(format!("grid starts at {}, below {min}", grid[0])));
    }
    Ok(())
}

struct Row {
    reference: f64,
    reference_err: f64,
    partial: Vec<f64>,
    abs: Vec<f64>,
    rel: Vec<f64>,
    omitted: Vec<f64>,
}

// independent grid points are evaluated on scoped threads and joined in order
fn sweep<F>(grid: &[f64], eval: F) -> Result<Vec<Row>, NumericError>
where
    F: Fn(f64) -> Result<Row, NumericError> + Sync,
{
    std::thread::scope(|s| {
        let eval = &eval;
        let handles: Vec<_> = grid.iter().map(|&x| s.spawn(move || eval(x))).collect();
        handles.into_iter().map(|h| h.join().expect("grid worker panicked")).collect()
    })
}

fn assemble(
    check: &str,
    grid: &[f64],
    term_counts: &[usize],
    rows: Vec<Row>,
    expected_order: Vec<f64>,
    min_decades: f64,
) -> VerificationReport {
    let mut r = VerificationReport {
        check: check.to_string(),
        lambda_grid: grid.to_vec(),
        term_counts: term_counts.to_vec(),
        reference: Vec::new(),
        reference_err: Vec::new(),
        partial_sums: Vec::new(),
        abs_errors: Vec::new(),
        rel_errors: Vec::new(),
        omitted: Vec::new(),
        fitted_order: Vec::new(),
        expected_order,
    };
    for row in rows {
        r.reference.push(row.reference);
        r.reference_err.push(row.reference_err);
        r.partial_sums.push(row.partial);
        r.abs_errors.push(row.abs);
        r.rel_errors.push(row.rel);
        r.omitted.push(row.omitted);
    }
    r.fitted_order = (0..term_counts.len())
        .map(|j| {
            let errs: Vec<f64> = r.abs_errors.iter().map(|row| row[j]).collect();
            fit_order(grid, &errs, &r.reference_err, min_decades)
        })
        .collect();
    r
}

fn check_counts(term_counts: &[usize]) -> Result<usize, NumericError> {
    match term_counts.iter().max() {
        Some(&m) if term_counts.iter().all(|&n| n >= 1) => Ok(m),
        _ => Err(NumericError::Domain("term counts must be nonempty and at least 1".into())),
    }
}

/// Stirling series `Gamma(lambda) ~ sqrt(2 pi) lambda^(lambda-1/2) e^-lambda sum (-1)^n gamma_n lambda^-n`.
///
/// Everything is normalized by the Stirling prefactor: the reference is
/// `Gamma(lambda) / (sqrt(2 pi) lambda^(lambda-1/2) e^-lambda) = exp(mu(lambda))`
/// from Binet's integral, so relative errors equal those of `Gamma` itself and the
/// check reaches `lambda = 1000` without overflow.
pub fn verify_stirling_series(grid: &[f64], term_counts: &[usize]) -> Result<VerificationReport, NumericError> {
    check_grid(grid, 5.0)?;
    let n_max = check_counts(term_counts)?;
    let gamma: Vec<f64> = stirling_closed_forms(n_max, StirlingForm::FirstKindPotential)
        .gamma
        .iter()
        .map(to_f64)
        .collect();
    let rows = sweep(grid, |lambda| {
        let mu = stirling_correction(lambda)?;
        let reference = mu.value.exp();
        let reference_err = reference * mu.err_bound + 4.0 * f64::EPSILON * mu.value.abs();
        let series: Vec<f64> =
            (0..=n_max).map(|n| if n % 2 == 0 { gamma[n] } else { -gamma[n] } * lambda.powi(-(n as i32))).collect();
        let mut row = Row { reference, reference_err, partial: vec![], abs: vec![], rel: vec![], omitted: vec![] };
        for &n in term_counts {
            // expm1 keeps the remainder free of the leading 1
            let tail: f64 = series[1..n].iter().sum();
            let abs = (mu.value.exp_m1() - tail).abs();
            row.partial.push(1.0 + tail);
            row.abs.push(abs);
            row.rel.push(abs / reference);
            row.omitted.push(series[n].abs());
        }
        Ok(row)
    })?;
    let expected = term_counts.iter().map(|&n| -(n as f64)).collect();
    Ok(assemble("stirling", grid, term_counts, rows, expected, 1.0))
}

/// `T_m = sum_{k<m} m! / (k! m^(m-k))`, so that `e^-m sum_{k<m} m^k/k! = T_m e^-m m^m / m!`.
fn diagonal_finite_sum(m: u64) -> Rational {
    let mut t = Rational::zero();
    let mut term = Rational::one();
    // k = m-1, m-2, ..., 0: term_k = term_(k+1) * (k+1) / m
    for k in (0..m).rev() {
        t += &term;
        term = term * Rational::new(BigInt::from(k), BigInt::from(m));
    }
    t
}

/// `Gamma(m,m)/Gamma(m) ~ 1/2 + (1/sqrt(2 pi m)) sum C_n(0) m^-n` over integer `m`.
///
/// The exact finite sum is compared in the inner normalization
/// `sqrt(2 pi m) (Gamma(m,m)/Gamma(m) - 1/2)` against `sum_{n<N} C_n(0) m^-n`, so the
/// remainder after `N` terms decays like `m^-N`. The prefactor `e^-m m^m / m!` comes
/// from Binet's integral, which keeps large `m` free of underflow.
pub fn verify_igamma_diagonal(m_grid: &[u64], term_counts: &[usize]) -> Result<VerificationReport, NumericError> {
    let grid: Vec<f64> = m_grid.iter().map(|&m| m as f64).collect();
    check_grid(&grid, 5.0)?;
    let n_max = check_counts(term_counts)?;
    let c0: Vec<f64> = diagonal_coefficients(n_max)?.c0.iter().map(to_f64).collect();
    let rows = sweep(&grid, |m| {
        let t = to_f64(&diagonal_finite_sum(m as u64));
        let mu = stirling_correction(m)?;
        let half_scale = 0.5 * sqrt_two_pi() * m.sqrt();
        let reference = t * (-mu.value).exp() - half_scale;
        let reference_err = 4.0 * f64::EPSILON * (t + half_scale) + t * mu.err_bound;
        let series: Vec<f64> = (0..=n_max).map(|n| c0[n] * m.powi(-(n as i32))).collect();
        let mut row = Row { reference, reference_err, partial: vec![], abs: vec![], rel: vec![], omitted: vec![] };
        for &n in term_counts {
            let s: f64 = series[..n].iter().sum();
            let abs = (reference - s).abs();
            row.partial.push(s);
            row.abs.push(abs);
            row.rel.push(abs / reference.abs());
            row.omitted.push(series[n].abs());
        }
        Ok(row)
    })?;
    let expected = term_counts.iter().map(|&n| -(n as f64)).collect();
    // the decade rule is relaxed slightly so that m in {10, 20, 40, 80} is fittable
    Ok(assemble("igamma", &grid, term_counts, rows, expected, 0.9))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinIntegrand {
    /// `int_0^inf exp(-lambda (x - log(1+x))) dx`
    LogFirst,
    /// `int_0^1 exp(-lambda (-x - log(1-x))) dx`
    LogSecond,
}

impl BuiltinIntegrand {
    pub fn name(self) -> &'static str {
        match self {
            BuiltinIntegrand::LogFirst => "log_first",
            BuiltinIntegrand::LogSecond => "log_second",
        }
    }

    pub fn problem(self, n_max: usize) -> LaplaceProblem {
        match self {
            BuiltinIntegrand::LogFirst => gamma_problem(n_max),
            BuiltinIntegrand::LogSecond => gamma_problem_second(n_max),
        }
    }

    pub fn domain(self) -> Domain {
        match self {
            BuiltinIntegrand::LogFirst => Domain::HalfLine,
            BuiltinIntegrand::LogSecond => Domain::UnitInterval,
        }
    }

    /// Phase `f(x)`, summed as a series near the minimum to avoid cancellation.
    pub fn phase(self, x: f64) -> f64 {
        let sign = match self {
            BuiltinIntegrand::LogFirst => -1.0,
            BuiltinIntegrand::LogSecond => 1.0,
        };
        if x.abs() < 0.25 {
            // sum_{k>=2} y^k / k with y = -x for the first phase, y = x for the second
            let y = sign * x;
            let mut p = y * y;
            let mut s = 0.0;
            for k in 2..40 {
                s += p / k as f64;
                p *= y;
            }
            s
        } else {
            match self {
                BuiltinIntegrand::LogFirst => x - x.ln_1p(),
                BuiltinIntegrand::LogSecond => -x - (-x).ln_1p(),
            }
        }
    }
}

/// Quadrature of a built-in integrand against the partial sums of its exact expansion.
pub fn verify_laplace_order(
    integrand: BuiltinIntegrand,
    grid: &[f64],
    term_counts: &[usize],
) -> Result<VerificationReport, NumericError> {
    check_grid(grid, f64::MIN_POSITIVE)?;
    let n_max = check_counts(term_counts)?;
    let p = integrand.problem(n_max);
    let c = coefficients(&p, Route::Comtet).map_err(crate::special::ExampleError::from)?;
    let rows = sweep(grid, |lambda| {
        let q = quadrature(|x| (-lambda * integrand.phase(x)).exp(), integrand.domain(), 1e-14)?;
        let t = terms(&p, &c, lambda, n_max + 1)?;
        let mut row = Row {
            reference: q.value,
            reference_err: q.err_bound,
            partial: vec![],
            abs: vec![],
            rel: vec![],
            omitted: vec![],
        };
        for &n in term_counts {
            let s: f64 = t[..n].iter().sum();
            let abs = (q.value - s).abs();
            row.partial.push(s);
            row.abs.push(abs);
            row.rel.push(abs / q.value.abs());
            row.omitted.push(t[n].abs());
        }
        Ok(row)
    })?;
    let alpha = to_f64(&p.alpha);
    let beta = to_f64(&p.beta);
    let expected = term_counts.iter().map(|&n| -(n as f64 + beta) / alpha).collect();
    Ok(assemble(integrand.name(), grid, term_counts, rows, expected, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use std::f64::consts::PI;

    #[test]
    fn empty_partial_sum_is_zero() {
        let p = gamma_problem(4);
        let c = coefficients(&p, Route::Direct).unwrap();
        assert_eq!(partial_sum(&p, &c, 10.0, 0).unwrap(), 0.0);
    }

    #[test]
    fn leading_term_of_gamma_example() {
        let p = gamma_problem(4);
        let c = coefficients(&p, Route::Direct).unwrap();
        // Gamma(1/2) / (2 sqrt(1/2) sqrt(10))
        let expected = PI.sqrt() / (2.0 * 0.5f64.sqrt() * 10f64.sqrt());
        assert!((partial_sum(&p, &c, 10.0, 1).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn partial_sum_domain_errors() {
        let mut p = gamma_problem(2);
        let c = coefficients(&p, Route::Direct).unwrap();
        assert!(matches!(partial_sum(&p, &c, 0.0, 1), Err(NumericError::Domain(_))));
        assert!(matches!(partial_sum(&p, &c, 10.0, 9), Err(NumericError::Insufficient { .. })));
        p.a[0] = int(-1);
        assert!(matches!(partial_sum(&p, &c, 10.0, 1), Err(NumericError::Domain(_))));
    }

    #[test]
    fn phases_match_direct_formula() {
        for &x in &[1e-6, 0.01, 0.2, 0.249, 0.26, 0.9] {
            let first = x - (1.0f64 + x).ln();
            let second = -x - (1.0f64 - x).ln();
            assert!((BuiltinIntegrand::LogFirst.phase(x) - first).abs() <= 1e-15 * (1.0 + first));
            assert!((BuiltinIntegrand::LogSecond.phase(x) - second).abs() <= 1e-15 * (1.0 + second));
        }
    }

    #[test]
    fn finite_sum_matches_direct_evaluation() {
        for m in [5u64, 10, 20, 40, 80] {
            let mf = m as f64;
            let direct: f64 = (0..m)
                .map(|k| (k as f64 * mf.ln() - mf - crate::numeric::ln_gamma_numeric(k as f64 + 1.0).unwrap()).exp())
                .sum();
            let mu = stirling_correction(mf).unwrap().value;
            let factored = to_f64(&diagonal_finite_sum(m)) / (sqrt_two_pi() * mf.sqrt() * mu.exp());
            assert!((direct - factored).abs() < 1e-12, "m = {m}");
            assert!(factored < 0.5);
        }
        assert_eq!(diagonal_finite_sum(1), int(1));
        // m = 2: 2!/(0! 4) + 2!/(1! 2) = 1/2 + 1
        assert_eq!(diagonal_finite_sum(2), Rational::new(3.into(), 2.into()));
    }

    #[test]
    fn integral_identity_for_gamma() {
        // Gamma(lambda) / (lambda^lambda e^-lambda) = first + second integral
        for &lambda in &[3.5, 10.0, 42.0] {
            let i1 = quadrature(|x| (-lambda * BuiltinIntegrand::LogFirst.phase(x)).exp(), Domain::HalfLine, 1e-14)
                .unwrap();
            let i2 =
                quadrature(|x| (-lambda * BuiltinIntegrand::LogSecond.phase(x)).exp(), Domain::UnitInterval, 1e-14)
                    .unwrap();
            let lhs = (crate::numeric::ln_gamma_numeric(lambda).unwrap() - lambda * lambda.ln() + lambda).exp();
            assert!(((i1.value + i2.value) - lhs).abs() <= 1e-12 * lhs, "lambda = {lambda}");
        }
    }

    #[test]
    fn fit_order_recovers_power_law() {
        let xs = log_grid(10.0, 1000.0, 9);
        let errs: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(-2.5)).collect();
        let noise = vec![0.0; xs.len()];
        assert!((fit_order(&xs, &errs, &noise, 1.0).unwrap() + 2.5).abs() < 1e-12);
        // errors buried in noise are not fitted
        let noise = vec![1.0; xs.len()];
        assert_eq!(fit_order(&xs, &errs, &noise, 1.0), None);
        assert_eq!(fit_order(&xs[..3], &errs[..3], &[0.0; 3], 0.0), None);
    }

    #[test]
    fn grids_validated() {
        assert!(verify_stirling_series(&[10.0, 5.0], &[1]).is_err());
        assert!(verify_stirling_series(&[4.0, 10.0], &[1]).is_err());
        assert!(verify_igamma_diagonal(&[3, 10], &[1]).is_err());
        assert!(verify_stirling_series(&[10.0], &[0]).is_err());
    }

    #[test]
    fn report_csv_shape() {
        let r = verify_stirling_series(&[10.0, 20.0], &[1, 2]).unwrap();
        let csv = r.to_csv(true);
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with("check,lambda,N,reference,partial_sum,abs_err,rel_err\n"));
        assert_eq!(r.summary_json()["orders"].as_array().unwrap().len(), 2);
    }
}
