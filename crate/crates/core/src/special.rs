//! Built-in worked examples.
//!
//! * The gamma function: `Gamma(lambda)/(lambda^lambda e^-lambda)` splits into two
//!   Laplace integrals with `f = x - log(1+x)` on `(0, inf)` and `f = -x - log(1-x)`
//!   on `(0, 1)`, both with `g = 1`, `alpha = 2`, `beta = 1`. Their even coefficients
//!   give the Stirling coefficients `gamma_n`, which are also produced by four closed
//!   forms in Stirling numbers of the first and second kind.
//! * The incomplete gamma function: the polynomials `Q_n(mu)` of the uniform
//!   expansion and the diagonal coefficients `C_n(0)` of `Gamma(a,a)/Gamma(a)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::coeffs::{coefficients, LaplaceProblem, ProblemError, Route};
use crate::exact::{
    binomial_rational, factorial, format_rational, gamma_half_ratio, int, ratio, sign_power, triangle, Rational,
    StirlingKind, StirlingTriangle,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("{what} disagree at n = {n}: {left} vs {right}")]
    Disagreement { what: &'static str, n: usize, left: String, right: String },
}

/// `f(x) = x - log(1+x) = sum (-1)^k x^(k+2)/(k+2)` with `g = 1`, coefficients up to `n_max`.
pub fn gamma_problem(n_max: usize) -> LaplaceProblem {
    let a = (0..=n_max).map(|k| sign_power(k) * ratio(1, k as i64 + 2)).collect();
    unit_amplitude(a, n_max)
}

/// `f(x) = -x - log(1-x) = sum x^(k+2)/(k+2)`, the companion integral on `(0, 1)`.
pub fn gamma_problem_second(n_max: usize) -> LaplaceProblem {
    let a = (0..=n_max).map(|k| ratio(1, k as i64 + 2)).collect();
    unit_amplitude(a, n_max)
}

fn unit_amplitude(a: Vec<Rational>, n_max: usize) -> LaplaceProblem {
    let mut b = vec![Rational::zero(); n_max + 1];
    b[0] = Rational::one();
    LaplaceProblem::new(int(2), int(1), a, b, n_max)
}

/// Stirling coefficients `gamma_0, gamma_1, ...` of
/// `Gamma(lambda) ~ sqrt(2 pi) lambda^(lambda-1/2) e^-lambda sum (-1)^n gamma_n lambda^-n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingCoefficients {
    pub gamma: Vec<Rational>,
}

impl StirlingCoefficients {
    /// `sum_{k=0}^{n} (-1)^(n-k) gamma_k gamma_(n-k)`; vanishes for `n >= 1`.
    pub fn convolution(&self, n: usize) -> Rational {
        (0..=n).fold(Rational::zero(), |acc, k| acc + sign_power(n - k) * &self.gamma[k] * &self.gamma[n - k])
    }
}

/// `gamma_n = (-1)^n 2^n Gamma(n+1/2)/sqrt(pi) c_sc[2n]` from the generic coefficient pipeline.
pub fn stirling_via_pipeline(n_max: usize, route: Route) -> Result<StirlingCoefficients, ExampleError> {
    let c = coefficients(&gamma_problem(2 * n_max), route)?.c_sc;
    let gamma = (0..=n_max)
        .map(|n| sign_power(n) * Rational::from_integer(BigInt::one() << n) * gamma_half_ratio(n) * &c[2 * n])
        .collect();
    Ok(StirlingCoefficients { gamma })
}

/// The four closed forms for `gamma_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StirlingForm {
    /// Integer potential polynomials of `x - log(1+x)`, Stirling numbers of the first kind.
    FirstKindPotential,
    /// Bell-polynomial form with Stirling numbers of the first kind.
    FirstKindBell,
    /// Integer potential polynomials of `e^x - x - 1`, Stirling numbers of the second kind.
    SecondKindPotential,
    /// Bell-polynomial form with Stirling numbers of the second kind.
    SecondKindBell,
}

impl StirlingForm {
    pub const ALL: [StirlingForm; 4] = [
        StirlingForm::FirstKindPotential,
        StirlingForm::FirstKindBell,
        StirlingForm::SecondKindPotential,
        StirlingForm::SecondKindBell,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StirlingForm::FirstKindPotential => "s_potential",
            StirlingForm::FirstKindBell => "s_bell",
            StirlingForm::SecondKindPotential => "S_potential",
            StirlingForm::SecondKindBell => "S_bell",
        }
    }

    fn kind(self) -> StirlingKind {
        match self {
            StirlingForm::FirstKindPotential | StirlingForm::FirstKindBell => StirlingKind::FirstUnsigned,
            StirlingForm::SecondKindPotential | StirlingForm::SecondKindBell => StirlingKind::Second,
        }
    }
}

/// Factorials, half-integer gamma ratios and one Stirling triangle, sized for a run of
/// closed-form evaluations.
pub struct ExampleTables {
    fact: Vec<BigInt>,
    half: Vec<Rational>,
    stirling: Arc<StirlingTriangle>,
}

impl ExampleTables {
    /// Enough for closed forms of `gamma_n` (and `q_k^(n)`) with `n <= n_max`.
    pub fn new(kind: StirlingKind, n_max: usize) -> Self {
        let top = 6 * n_max + 2;
        let mut fact = Vec::with_capacity(top + 1);
        fact.push(BigInt::one());
        for i in 1..=top {
            let next = &fact[i - 1] * i;
            fact.push(next);
        }
        let mut half = Vec::with_capacity(3 * n_max + 3);
        half.push(Rational::one());
        for m in 1..=3 * n_max + 2 {
            let next = &half[m - 1] * Rational::new((2 * m as i64 - 1).into(), 2.into());
            half.push(next);
        }
        ExampleTables { fact, half, stirling: triangle(kind, top) }
    }

    fn fact(&self, n: usize) -> &BigInt {
        &self.fact[n]
    }

    fn inv_fact(&self, n: usize) -> Rational {
        Rational::new(BigInt::one(), self.fact[n].clone())
    }

    /// `sum_{i=0}^{m} (-1)^i T(offset+m+i, i) / ((m-i)! (offset+m+i)!)`, summed over the
    /// common denominator `m! (offset+2m)!`.
    fn stirling_inner(&self, offset: usize, m: usize) -> Rational {
        let top = offset + 2 * m;
        let mut num = BigInt::zero();
        for i in 0..=m {
            let t = self.stirling.get(offset + m + i, i);
            if t.is_zero() {
                continue;
            }
            let w = (self.fact(m) / self.fact(m - i)) * (self.fact(top) / self.fact(offset + m + i));
            if i % 2 == 0 {
                num += t * w;
            } else {
                num -= t * w;
            }
        }
        Rational::new(num, self.fact(m) * self.fact(top))
    }
}

pub fn stirling_closed_form(n: usize, form: StirlingForm) -> Rational {
    stirling_closed_form_with(&ExampleTables::new(form.kind(), n), n, form)
}

/// Closed form for `gamma_n` reusing precomputed tables; `tables` must hold the
/// triangle matching `form`.
pub fn stirling_closed_form_with(tables: &ExampleTables, n: usize, form: StirlingForm) -> Rational {
    assert_eq!(tables.stirling.kind(), form.kind(), "tables built for the other Stirling kind");
    let sign = sign_power(n);
    match form {
        StirlingForm::FirstKindPotential | StirlingForm::SecondKindPotential => {
            // (-1)^n 2^(n+1) Gamma(3n+3/2)/sqrt(pi)
            //   sum_k 2^k / ((2n+2k+1) (2n-k)!) inner(2n, k)
            let mut sum = Rational::zero();
            for k in 0..=2 * n {
                let w = Rational::new(BigInt::one() << k, BigInt::from(2 * n + 2 * k + 1) * tables.fact(2 * n - k));
                sum += w * tables.stirling_inner(2 * n, k);
            }
            sign * Rational::from_integer(BigInt::one() << (n + 1)) * &tables.half[3 * n + 1] * sum
        }
        StirlingForm::FirstKindBell | StirlingForm::SecondKindBell => {
            // (-1)^n 2^n sum_k Gamma(n+k+1/2)/sqrt(pi) sum_j 2^j / (k-j)! inner(2n, j)
            let inner: Vec<Rational> = (0..=2 * n)
                .map(|j| Rational::from_integer(BigInt::one() << j) * tables.stirling_inner(2 * n, j))
                .collect();
            let mut sum = Rational::zero();
            for k in 0..=2 * n {
                let mid = (0..=k).fold(Rational::zero(), |acc, j| acc + tables.inv_fact(k - j) * &inner[j]);
                sum += &tables.half[n + k] * mid;
            }
            sign * Rational::from_integer(BigInt::one() << n) * sum
        }
    }
}

/// `gamma_0..=gamma_n_max` by one closed form.
pub fn stirling_closed_forms(n_max: usize, form: StirlingForm) -> StirlingCoefficients {
    let tables = ExampleTables::new(form.kind(), n_max);
    StirlingCoefficients { gamma: (0..=n_max).map(|n| stirling_closed_form_with(&tables, n, form)).collect() }
}

/// `A_{k,n}` of `(2 (x - log(1+x)) / x^2)^k` in closed form:
/// `2^k sum_j (-1)^(n+k+j) binom(k,j) j! s(n+k+j, j) / (n+k+j)!`.
pub fn potential_closed_form_log(k: usize, n: usize) -> Rational {
    let tri = triangle(StirlingKind::FirstUnsigned, n + 2 * k);
    let kk = int(k as i64);
    let sum = (0..=k).fold(Rational::zero(), |acc, j| {
        let s = tri.get(n + k + j, j);
        if s.is_zero() {
            return acc;
        }
        let term = binomial_rational(&kk, j) * Rational::new(factorial(j) * s, factorial(n + k + j));
        acc + sign_power(n + k + j) * term
    });
    Rational::from_integer(BigInt::one() << k) * sum
}

/// `Q_n(mu) = sum_k q_k^(n) mu^k`, degree `2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomial {
    pub n: usize,
    pub q: Vec<Rational>,
}

impl QPolynomial {
    pub fn degree(&self) -> usize {
        self.q.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn eval(&self, mu: &Rational) -> Rational {
        self.q.iter().rev().fold(Rational::zero(), |acc, c| acc * mu + c)
    }
}

/// `q_k^(n)` from the printed Stirling-number formula
/// `sum_j (-1)^k 2^(n+j+1) Gamma(n+k+3/2)/(sqrt(pi) (2n+2j+1) (k-j)!) inner(k, j)`.
pub fn q_polynomial_stirling(n: usize) -> QPolynomial {
    let tables = ExampleTables::new(StirlingKind::FirstUnsigned, n);
    let q = (0..=2 * n)
        .map(|k| {
            let sum = (0..=k).fold(Rational::zero(), |acc, j| {
                let w = Rational::new(BigInt::one() << (n + j + 1), BigInt::from(2 * n + 2 * j + 1) * tables.fact(k - j));
                acc + w * tables.stirling_inner(k, j)
            });
            sign_power(k) * &tables.half[n + k + 1] * sum
        })
        .collect();
    QPolynomial { n, q }
}

/// `q_k^(n) = 2^(n+1) Gamma(n+k+3/2)/(sqrt(pi) k!) sum_j (-1)^j binom(k,j) A_{j,k} / (2n+2j+1)`
/// with `A_{j,k}` from [`potential_closed_form_log`].
pub fn q_polynomial_potential(n: usize) -> QPolynomial {
    let q = (0..=2 * n)
        .map(|k| {
            let kk = int(k as i64);
            let sum = (0..=k).fold(Rational::zero(), |acc, j| {
                acc + sign_power(j) * binomial_rational(&kk, j) * potential_closed_form_log(j, k)
                    / int(2 * n as i64 + 2 * j as i64 + 1)
            });
            Rational::new(BigInt::one() << (n + 1), factorial(k)) * gamma_half_ratio(n + k + 1) * sum
        })
        .collect();
    QPolynomial { n, q }
}

/// `Q_n` by both formulas; an error if they differ anywhere.
pub fn q_polynomial(n: usize) -> Result<QPolynomial, ExampleError> {
    let printed = q_polynomial_stirling(n);
    let potential = q_polynomial_potential(n);
    for (k, (l, r)) in printed.q.iter().zip(&potential.q).enumerate() {
        if l != r {
            return Err(ExampleError::Disagreement {
                what: "q-polynomial coefficient routes",
                n: k,
                left: format_rational(l),
                right: format_rational(r),
            });
        }
    }
    Ok(printed)
}

/// `C_n(0)` for `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalCoefficients {
    pub c0: Vec<Rational>,
}

/// `C_n(0) = -gamma_n/3 + sum_{k<n} (n-k)! gamma_k c_{2n-2k+1}`, where the odd
/// coefficients of the gamma example unscale exactly: `c_{2m+1} = 2^m c_sc[2m+1]`.
pub fn diagonal_coefficients(n_max: usize) -> Result<DiagonalCoefficients, ExampleError> {
    let (gamma, c_odd) = diagonal_inputs(n_max)?;
    let c0 = (0..=n_max)
        .map(|n| {
            let tail = (0..n).fold(Rational::zero(), |acc, k| {
                acc + Rational::from_integer(factorial(n - k)) * &gamma[k] * &c_odd[n - k]
            });
            -&gamma[n] / int(3) + tail
        })
        .collect();
    Ok(DiagonalCoefficients { c0 })
}

/// `gamma_0..=gamma_n_max` and the unscaled odd coefficients `c_{2m+1}`, `m = 0..=n_max`.
pub(crate) fn diagonal_inputs(n_max: usize) -> Result<(Vec<Rational>, Vec<Rational>), ExampleError> {
    let c_sc = coefficients(&gamma_problem(2 * n_max + 1), Route::Comtet)?.c_sc;
    let gamma = (0..=n_max)
        .map(|n| sign_power(n) * Rational::from_integer(BigInt::one() << n) * gamma_half_ratio(n) * &c_sc[2 * n])
        .collect();
    let c_odd = (0..=n_max).map(|m| Rational::from_integer(BigInt::one() << m) * &c_sc[2 * m + 1]).collect();
    Ok((gamma, c_odd))
}
