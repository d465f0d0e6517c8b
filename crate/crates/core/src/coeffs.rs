//! Coefficients `c_n` of the Laplace-method expansion
//!
//! ```text
//! I(lambda) ~ exp(-lambda f(a)) sum_n Gamma((n+beta)/alpha) c_n lambda^(-(n+beta)/alpha)
//! ```
//!
//! for `f(x) - f(a) ~ sum a_k (x-a)^(k+alpha)` and `g(x) ~ sum b_k (x-a)^(k+beta-1)`.
//!
//! The powers `a_0^((n+beta)/alpha)` are irrational in general, so every route returns
//! the rational *scaled* coefficients `c_sc[n] = alpha a_0^((n+beta)/alpha) c_n`. The
//! numeric layer undoes the scaling when it evaluates partial sums.
//!
//! Three independent routes are provided: potential polynomials at negative rational
//! order ([`Route::Direct`]), Bell polynomials with rising factorials
//! ([`Route::Wojdylo`]), and integer-order potential polynomials ([`Route::Comtet`]).
//! For `g = 1` there are specialized single-sum variants ([`coeffs_g1`]) and a
//! series-reversion oracle ([`reversion_oracle`]).

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bell::{bell_table, potential_integer_table, potential_row, potential_row_binomial, NormalizedSeries};
use crate::exact::{binomial_rational, factorial, format_rational, int, pow_i64, rising_factorial, sign_power, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("a_0 must be nonzero")]
    ZeroA0,
    #[error("b_0 must be nonzero")]
    ZeroB0,
    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(String),
    #[error("beta must be positive, got {0}")]
    NonPositiveBeta(String),
    #[error("coefficient list `{list}` has {got} entries but n_max = {n_max} needs {needed}; pass pad to zero-fill")]
    Truncated { list: &'static str, got: usize, needed: usize, n_max: usize },
    #[error("this route requires g = 1 (beta = 1, b = (1, 0, 0, ...))")]
    NotUnitAmplitude,
}

/// Input datum: exponents `alpha`, `beta`, local coefficients `a_k` of `f` and `b_k` of
/// `g`, and the truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplaceProblem {
    pub alpha: Rational,
    pub beta: Rational,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub n_max: usize,
    /// Treat missing `a_k`, `b_k` as zero instead of rejecting the problem.
    pub pad: bool,
}

impl LaplaceProblem {
    pub fn new(alpha: Rational, beta: Rational, a: Vec<Rational>, b: Vec<Rational>, n_max: usize) -> Self {
        LaplaceProblem { alpha, beta, a, b, n_max, pad: false }
    }

    pub fn with_pad(mut self, pad: bool) -> Self {
        self.pad = pad;
        self
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    /// Checks the preconditions; returns warnings (zero-padding) on success.
    pub fn validate(&self) -> Result<Vec<String>, ProblemError> {
        if !self.alpha.is_positive() {
            return Err(ProblemError::NonPositiveAlpha(format_rational(&self.alpha)));
        }
        if !self.beta.is_positive() {
            return Err(ProblemError::NonPositiveBeta(format_rational(&self.beta)));
        }
        if self.a.first().map_or(true, Zero::is_zero) {
            return Err(ProblemError::ZeroA0);
        }
        if self.b.first().map_or(true, Zero::is_zero) {
            return Err(ProblemError::ZeroB0);
        }
        let needed = self.n_max + 1;
        let mut warnings = Vec::new();
        for (list, v) in [("a", &self.a), ("b", &self.b)] {
            if v.len() < needed {
                if !self.pad {
                    return Err(ProblemError::Truncated { list, got: v.len(), needed, n_max: self.n_max });
                }
                warnings.push(format!(
                    "`{list}` zero-padded from {} to {needed} entries; the expansion is for the truncated input",
                    v.len()
                ));
            }
        }
        Ok(warnings)
    }

    /// `a_k`, zero past the supplied list.
    pub fn a(&self, k: usize) -> Rational {
        self.a.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `b_k`, zero past the supplied list.
    pub fn b(&self, k: usize) -> Rational {
        self.b.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(n + beta) / alpha`.
    pub fn exponent(&self, n: usize) -> Rational {
        (int(n as i64) + &self.beta) / &self.alpha
    }

    /// `a_k / a_0` as a normalized series truncated at `n_max`.
    pub fn normalized_a(&self) -> NormalizedSeries {
        let a0 = &self.a[0];
        NormalizedSeries::new((1..=self.n_max).map(|k| self.a(k) / a0).collect())
    }

    /// True when `beta = 1` and `b = (1, 0, 0, ...)` up to `n_max`.
    pub fn is_unit_amplitude(&self) -> bool {
        self.beta.is_one() && self.b(0).is_one() && (1..=self.n_max).all(|k| self.b(k).is_zero())
    }
}

/// Exact output `c_sc[n] = alpha a_0^((n+beta)/alpha) c_n`, `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledCoefficients {
    pub c_sc: Vec<Rational>,
    pub problem: LaplaceProblem,
    pub warnings: Vec<String>,
}

impl ScaledCoefficients {
    pub fn terms(&self) -> Vec<ExpansionTerm> {
        self.c_sc
            .iter()
            .enumerate()
            .map(|(n, c)| ExpansionTerm { n, exponent: self.problem.exponent(n), scaled: c.clone() })
            .collect()
    }

    pub fn exponents(&self) -> Vec<Rational> {
        (0..self.c_sc.len()).map(|n| self.problem.exponent(n)).collect()
    }
}

/// One term `Gamma(exponent) c_n lambda^(-exponent)` of the expansion, kept in scaled form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub n: usize,
    pub exponent: Rational,
    pub scaled: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Potential polynomials of negative rational order.
    Direct,
    /// Bell polynomials on the raw `a_k` with rising factorials.
    Wojdylo,
    /// Integer-order potential polynomials.
    Comtet,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Direct, Route::Wojdylo, Route::Comtet];

    pub fn name(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Wojdylo => "wojdylo",
            Route::Comtet => "comtet",
        }
    }
}

impl std::str::FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct" => Ok(Route::Direct),
            "wojdylo" => Ok(Route::Wojdylo),
            "comtet" => Ok(Route::Comtet),
            other => Err(format!("unknown route {other:?}")),
        }
    }
}

pub fn coefficients(p: &LaplaceProblem, route: Route) -> Result<ScaledCoefficients, ProblemError> {
    match route {
        Route::Direct => coeffs_direct(p),
        Route::Wojdylo => coeffs_wojdylo(p),
        Route::Comtet => coeffs_comtet(p),
    }
}

fn finish(p: &LaplaceProblem, warnings: Vec<String>, c_sc: Vec<Rational>) -> ScaledCoefficients {
    ScaledCoefficients { c_sc, problem: p.clone(), warnings }
}

/// `c_sc[n] = sum_k b_{n-k} A_{-(n+beta)/alpha, k}(a_1/a_0, ..., a_k/a_0)`.
pub fn coeffs_direct(p: &LaplaceProblem) -> Result<ScaledCoefficients, ProblemError> {
    let warnings = p.validate()?;
    let bell = bell_table(&p.normalized_a(), p.n_max);
    let c_sc = (0..=p.n_max)
        .map(|n| {
            let pot = potential_row_binomial(&-p.exponent(n), &bell);
            (0..=n).fold(Rational::zero(), |acc, k| acc + p.b(n - k) * &pot.a[k])
        })
        .collect();
    Ok(finish(p, warnings, c_sc))
}

/// `c_sc[n] = sum_k b_{n-k} sum_j (-1)^j a_0^(-j) B_{k,j}(a_1, a_2, ...) (z)_j / j!`
/// with `z = (n+beta)/alpha`; the Bell table is built on the unnormalized `a_k`.
pub fn coeffs_wojdylo(p: &LaplaceProblem) -> Result<ScaledCoefficients, ProblemError> {
    let warnings = p.validate()?;
    let raw = NormalizedSeries::new((1..=p.n_max).map(|k| p.a(k)).collect());
    let bell = bell_table(&raw, p.n_max);
    let a0_inv = p.a(0).recip();
    // (-1)^j a_0^(-j) / j!
    let weights: Vec<Rational> = (0..=p.n_max)
        .map(|j| sign_power(j) * pow_i64(&a0_inv, j as i64) / Rational::from_integer(factorial(j)))
        .collect();
    let c_sc = (0..=p.n_max)
        .map(|n| {
            let z = p.exponent(n);
            let rising: Vec<Rational> = (0..=n).map(|j| rising_factorial(&z, j)).collect();
            (0..=n).fold(Rational::zero(), |acc, k| {
                let inner = (0..=k)
                    .filter(|&j| !bell.get(k, j).is_zero())
                    .fold(Rational::zero(), |s, j| s + &weights[j] * bell.get(k, j) * &rising[j]);
                acc + p.b(n - k) * inner
            })
        })
        .collect();
    Ok(finish(p, warnings, c_sc))
}

/// Which of the two equivalent integer-potential forms to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComtetForm {
    /// `binom(-z, k) sum_j (-1)^(k+j) (n+beta+alpha k)/(n+beta+alpha j) binom(k,j) A_{j,k}`
    Binomial,
    /// `(z)_{k+1} / k! sum_j (-1)^j / (z+j) binom(k,j) A_{j,k}`
    GammaRatio,
}

pub fn coeffs_comtet(p: &LaplaceProblem) -> Result<ScaledCoefficients, ProblemError> {
    coeffs_comtet_form(p, ComtetForm::Binomial)
}

/// Integer-order potential polynomials `A_{j,k}(a_1/a_0, ...)` with either weight form.
pub fn coeffs_comtet_form(p: &LaplaceProblem, form: ComtetForm) -> Result<ScaledCoefficients, ProblemError> {
    let warnings = p.validate()?;
    let pot = potential_integer_table(&p.normalized_a(), p.n_max);
    let binom_int = binomial_rows(p.n_max);
    let c_sc = (0..=p.n_max)
        .map(|n| {
            let z = p.exponent(n);
            let shift = int(n as i64) + &p.beta;
            (0..=n).fold(Rational::zero(), |acc, k| {
                let b = p.b(n - k);
                if b.is_zero() {
                    return acc;
                }
                let term = match form {
                    ComtetForm::Binomial => {
                        let top = &shift + &p.alpha * int(k as i64);
                        let inner = (0..=k).fold(Rational::zero(), |s, j| {
                            let ratio = &top / (&shift + &p.alpha * int(j as i64));
                            s + sign_power(k + j) * ratio * &binom_int[k][j] * pot.get(j, k)
                        });
                        binomial_rational(&-z.clone(), k) * inner
                    }
                    ComtetForm::GammaRatio => {
                        let inner = (0..=k).fold(Rational::zero(), |s, j| {
                            s + sign_power(j) * &binom_int[k][j] * pot.get(j, k) / (&z + int(j as i64))
                        });
                        rising_factorial(&z, k + 1) / Rational::from_integer(factorial(k)) * inner
                    }
                };
                acc + b * term
            })
        })
        .collect();
    Ok(finish(p, warnings, c_sc))
}

/// Specialized single-sum formulas for `g = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G1Route {
    /// `binom(-(n+1)/alpha, n) sum_k (-1)^(n+k) (n+1+alpha n)/(n+1+alpha k) binom(n,k) A_{k,n}`
    Comtet,
    /// `sum_k (-1)^k a_0^(-k) B_{n,k}(a_1, ...) ((n+1)/alpha)_k / k!`
    Wojdylo,
}

pub fn coeffs_g1(p: &LaplaceProblem, route: G1Route) -> Result<ScaledCoefficients, ProblemError> {
    let warnings = p.validate()?;
    if !p.is_unit_amplitude() {
        return Err(ProblemError::NotUnitAmplitude);
    }
    let c_sc = match route {
        G1Route::Comtet => {
            let pot = potential_integer_table(&p.normalized_a(), p.n_max);
            let binom_int = binomial_rows(p.n_max);
            (0..=p.n_max)
                .map(|n| {
                    let n1 = int(n as i64 + 1);
                    let top = &n1 + &p.alpha * int(n as i64);
                    let inner = (0..=n).fold(Rational::zero(), |s, k| {
                        let ratio = &top / (&n1 + &p.alpha * int(k as i64));
                        s + sign_power(n + k) * ratio * &binom_int[n][k] * pot.get(k, n)
                    });
                    binomial_rational(&-p.exponent(n), n) * inner
                })
                .collect()
        }
        G1Route::Wojdylo => {
            let raw = NormalizedSeries::new((1..=p.n_max).map(|k| p.a(k)).collect());
            let bell = bell_table(&raw, p.n_max);
            let a0_inv = p.a(0).recip();
            (0..=p.n_max)
                .map(|n| {
                    let z = p.exponent(n);
                    (0..=n).fold(Rational::zero(), |s, k| {
                        s + sign_power(k) * pow_i64(&a0_inv, k as i64) * bell.get(n, k)
                            * rising_factorial(&z, k)
                            / Rational::from_integer(factorial(k))
                    })
                })
                .collect()
        }
    };
    Ok(finish(p, warnings, c_sc))
}

/// Series-reversion oracle for `g = 1`.
///
/// With `w = x (A(x)/a_0)^(1/alpha)` the inverse `x = sum delta_k w^k` has rational
/// coefficients, `delta_k = d_k a_0^(k/alpha)`, and `c_sc[k] = (k+1) delta_{k+1}`.
/// The inverse is obtained by the fixed-point iteration `X <- X + (w - W(X))`, each
/// pass fixing one more coefficient, so it never touches the potential-polynomial
/// formulas of the other routes.
pub fn reversion_oracle(p: &LaplaceProblem) -> Result<ScaledCoefficients, ProblemError> {
    let warnings = p.validate()?;
    if !p.is_unit_amplitude() {
        return Err(ProblemError::NotUnitAmplitude);
    }
    let degree = p.n_max + 1;
    let power = potential_row(&p.alpha.recip(), &p.normalized_a(), p.n_max);
    let inverse = revert_series(&power.a, degree);
    let c_sc = (0..=p.n_max).map(|k| int(k as i64 + 1) * &inverse[k + 1]).collect();
    Ok(finish(p, warnings, c_sc))
}

/// Compositional inverse of `W(x) = x (p_0 + p_1 x + ...)` with `p_0 = 1`, returned as
/// coefficients `0..=degree` (index 0 is always zero).
pub fn revert_series(p: &[Rational], degree: usize) -> Vec<Rational> {
    assert!(p.first().is_some_and(One::is_one), "reversion needs a unit linear term");
    let mut w = vec![Rational::zero(); degree + 1];
    if degree >= 1 {
        w[1] = Rational::one();
    }
    let mut x = w.clone();
    for _ in 1..degree {
        // W(X) = X * (p_0 + X (p_1 + X (p_2 + ...))), Horner on truncated series
        let mut acc = vec![Rational::zero(); degree + 1];
        for coeff in p.iter().take(degree).rev() {
            acc = mul_trunc(&acc, &x, degree);
            acc[0] += coeff;
        }
        let wx = mul_trunc(&acc, &x, degree);
        for i in 0..=degree {
            x[i] = &x[i] + &w[i] - &wx[i];
        }
    }
    x
}

fn mul_trunc(a: &[Rational], b: &[Rational], degree: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); degree + 1];
    for (i, ai) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (j, bj) in b.iter().enumerate().take(degree + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn binomial_rows(n_max: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let left = if k > 0 { prev[k - 1].clone() } else { Rational::zero() };
                let right = prev.get(k).cloned().unwrap_or_else(Rational::zero);
                left + right
            })
            .collect();
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use proptest::prelude::*;

    fn gamma_like(n_max: usize) -> LaplaceProblem {
        let a = (0..=n_max).map(|k| sign_power(k) * ratio(1, k as i64 + 2)).collect();
        LaplaceProblem::new(int(2), int(1), a, vec![int(1)], n_max).with_pad(true)
    }

    #[test]
    fn leading_coefficient_is_b0() {
        let p = LaplaceProblem::new(ratio(3, 2), ratio(1, 2), vec![ratio(-2, 3), int(5)], vec![ratio(7, 4), int(1)], 1);
        for route in Route::ALL {
            assert_eq!(coefficients(&p, route).unwrap().c_sc[0], ratio(7, 4));
        }
    }

    #[test]
    fn first_coefficient_example() {
        let p = LaplaceProblem::new(int(1), int(1), vec![int(1), int(1)], vec![int(1), int(0)], 1);
        for route in Route::ALL {
            assert_eq!(coefficients(&p, route).unwrap().c_sc[1], int(-2));
        }
    }

    #[test]
    fn gamma_example_second_coefficient() {
        // [x^2] (1+u)^(-3/2), u = -2x/3 + x^2/2:  -3/2 * 1/2 + 15/8 * 4/9 = 1/12
        let p = gamma_like(4);
        for route in Route::ALL {
            assert_eq!(coefficients(&p, route).unwrap().c_sc[2], ratio(1, 12));
        }
        for r in [G1Route::Comtet, G1Route::Wojdylo] {
            assert_eq!(coeffs_g1(&p, r).unwrap().c_sc[2], ratio(1, 12));
        }
        assert_eq!(reversion_oracle(&p).unwrap().c_sc[2], ratio(1, 12));
    }

    #[test]
    fn zero_order_returns_b0_only() {
        let p = LaplaceProblem::new(int(3), ratio(5, 2), vec![int(4)], vec![ratio(-9, 7)], 0);
        for route in Route::ALL {
            assert_eq!(coefficients(&p, route).unwrap().c_sc, vec![ratio(-9, 7)]);
        }
    }

    #[test]
    fn trivial_reversion() {
        let p = LaplaceProblem::new(ratio(3, 2), int(1), vec![int(1)], vec![int(1)], 6).with_pad(true);
        let c = reversion_oracle(&p).unwrap().c_sc;
        assert_eq!(c[0], int(1));
        assert!(c[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn revert_known_series() {
        // w = x + x^2  =>  x = w - w^2 + 2 w^3 - 5 w^4 + 14 w^5 (Catalan, alternating)
        let inv = revert_series(&[int(1), int(1)], 5);
        assert_eq!(inv, vec![int(0), int(1), int(-1), int(2), int(-5), int(14)]);
    }

    #[test]
    fn validation_errors() {
        let base = LaplaceProblem::new(int(2), int(1), vec![int(1); 3], vec![int(1); 3], 2);
        let mut p = base.clone();
        p.a[0] = int(0);
        assert_eq!(coeffs_direct(&p).unwrap_err(), ProblemError::ZeroA0);
        let mut p = base.clone();
        p.b[0] = int(0);
        assert_eq!(coeffs_wojdylo(&p).unwrap_err(), ProblemError::ZeroB0);
        let mut p = base.clone();
        p.alpha = int(0);
        assert!(matches!(coeffs_comtet(&p), Err(ProblemError::NonPositiveAlpha(_))));
        let mut p = base.clone();
        p.beta = ratio(-1, 2);
        assert!(matches!(coeffs_comtet(&p), Err(ProblemError::NonPositiveBeta(_))));
        let p = base.clone().with_n_max(4);
        assert!(matches!(coeffs_direct(&p), Err(ProblemError::Truncated { list: "a", got: 3, needed: 5, .. })));
        let padded = coeffs_direct(&p.with_pad(true)).unwrap();
        assert_eq!(padded.warnings.len(), 2);
        assert_eq!(coeffs_g1(&base, G1Route::Comtet).unwrap_err(), ProblemError::NotUnitAmplitude);
        assert_eq!(reversion_oracle(&base).unwrap_err(), ProblemError::NotUnitAmplitude);
    }

    #[test]
    fn negative_leading_coefficient_is_formal() {
        let p = LaplaceProblem::new(int(1), int(2), vec![int(-3), int(2), ratio(1, 5)], vec![int(2), int(-1), int(4)], 2);
        let d = coeffs_direct(&p).unwrap();
        assert_eq!(d, coeffs_wojdylo(&p).unwrap());
        assert_eq!(d, coeffs_comtet(&p).unwrap());
    }

    #[test]
    fn exponents_increase() {
        let p = gamma_like(6);
        let ex = coeffs_direct(&p).unwrap().exponents();
        assert!(ex.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ex[0], ratio(1, 2));
    }

    fn pick(choices: &'static [(i64, i64)]) -> impl Strategy<Value = Rational> {
        proptest::sample::select(choices).prop_map(|(p, q)| ratio(p, q))
    }

    const EXPONENTS: &[(i64, i64)] = &[(1, 2), (1, 1), (3, 2), (2, 1), (3, 1)];

    fn coefficient() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=9).prop_map(|(p, q)| ratio(p, q))
    }

    fn nonzero_coefficient() -> impl Strategy<Value = Rational> {
        coefficient().prop_filter("nonzero", |r| !r.is_zero())
    }

    prop_compose! {
        fn problem()(alpha in pick(EXPONENTS), beta in pick(EXPONENTS), n_max in 0usize..=8)
            (a0 in nonzero_coefficient(), b0 in nonzero_coefficient(),
             a in proptest::collection::vec(coefficient(), n_max),
             b in proptest::collection::vec(coefficient(), n_max),
             alpha in Just(alpha), beta in Just(beta), n_max in Just(n_max)) -> LaplaceProblem {
            let mut av = vec![a0];
            av.extend(a);
            let mut bv = vec![b0];
            bv.extend(b);
            LaplaceProblem::new(alpha, beta, av, bv, n_max)
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn comtet_forms_agree(p in problem()) {
            prop_assert_eq!(
                coeffs_comtet_form(&p, ComtetForm::Binomial).unwrap().c_sc,
                coeffs_comtet_form(&p, ComtetForm::GammaRatio).unwrap().c_sc
            );
        }

        #[test]
        fn explicit_low_order(p in problem()) {
            let c = coeffs_direct(&p).unwrap().c_sc;
            let (al, be) = (&p.alpha, &p.beta);
            let (a0, a1, a2) = (p.a(0), p.a(1), p.a(2));
            let (b0, b1, b2) = (p.b(0), p.b(1), p.b(2));
            if p.n_max >= 1 {
                let c1 = &b1 - (be + int(1)) * &a1 * &b0 / (al * &a0);
                prop_assert_eq!(&c[1], &c1);
            }
            if p.n_max >= 2 {
                let c2 = &b2 - (be + int(2)) * &a1 * &b1 / (al * &a0)
                    + ((be + al + int(2)) * &a1 * &a1 - int(2) * al * &a0 * &a2) * (be + int(2)) * &b0
                        / (int(2) * al * al * &a0 * &a0);
                prop_assert_eq!(&c[2], &c2);
            }
        }

        #[test]
        fn invariant_under_scaling_a(p in problem()) {
            let mut q = p.clone();
            // c_sc depends on a only through a_k / a_0
            q.a.iter_mut().for_each(|x| *x *= int(3));
            prop_assert_eq!(coeffs_comtet(&p).unwrap().c_sc, coeffs_comtet(&q).unwrap().c_sc);
            prop_assert_eq!(coeffs_wojdylo(&p).unwrap().c_sc, coeffs_wojdylo(&q).unwrap().c_sc);
        }

        #[test]
        fn g1_routes_match_general(
            alpha in pick(EXPONENTS),
            a0 in nonzero_coefficient(),
            tail in proptest::collection::vec(coefficient(), 10),
            n_max in 0usize..=10,
        ) {
            let mut a = vec![a0];
            a.extend(tail);
            let p = LaplaceProblem::new(alpha, int(1), a, vec![int(1)], n_max).with_pad(true);
            let general = coeffs_comtet(&p).unwrap().c_sc;
            prop_assert_eq!(&coeffs_wojdylo(&p).unwrap().c_sc, &general);
            prop_assert_eq!(&coeffs_g1(&p, G1Route::Comtet).unwrap().c_sc, &general);
            prop_assert_eq!(&coeffs_g1(&p, G1Route::Wojdylo).unwrap().c_sc, &general);
            if n_max <= 8 {
                prop_assert_eq!(&reversion_oracle(&p).unwrap().c_sc, &general);
            }
        }
    }
}
