//! Partial ordinary Bell polynomials `B_{n,k}` and ordinary potential polynomials
//! `A_{rho,n}` evaluated at exact rational arguments.
//!
//! Everything here is in normalized form: the series is `F(x) = 1 + sum f_n x^n`, so
//! `B_{n,k}` is the coefficient of `x^n` in `(F(x) - 1)^k` and `A_{rho,n}` the
//! coefficient of `x^n` in `F(x)^rho`. Denormalization by powers of a leading
//! coefficient is the caller's business.

use num_traits::{One, Signed, Zero};

use crate::exact::{binomial_rational, format_rational, Rational};

/// Coefficients `f_1, f_2, ...` of `F(x) = 1 + sum f_n x^n`. Entries past the end are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NormalizedSeries {
    f: Vec<Rational>,
}

impl NormalizedSeries {
    /// `f` holds `f_1, f_2, ...` (so `f[0]` is `f_1`).
    pub fn new(f: Vec<Rational>) -> Self {
        NormalizedSeries { f }
    }

    /// `a_k / a_0` for `k >= 1`. Panics if `a` is empty or `a_0 = 0`.
    pub fn from_leading(a: &[Rational]) -> Self {
        let a0 = &a[0];
        assert!(!a0.is_zero(), "leading coefficient must be nonzero");
        NormalizedSeries { f: a[1..].iter().map(|ak| ak / a0).collect() }
    }

    /// `f_n` (1-based); `f_0` is reported as 1 so that `F(x) = sum_{n>=0} coeff(n) x^n`.
    pub fn coeff(&self, n: usize) -> Rational {
        match n {
            0 => Rational::one(),
            n => self.f.get(n - 1).cloned().unwrap_or_else(Rational::zero),
        }
    }

    /// `f_n` for `n >= 1`, zero otherwise.
    pub fn f(&self, n: usize) -> Rational {
        if n == 0 {
            Rational::zero()
        } else {
            self.coeff(n)
        }
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.f
    }

    /// Replaces `f_n` by `t^n f_n`.
    pub fn scaled(&self, t: &Rational) -> Self {
        let mut pow = Rational::one();
        let f = self
            .f
            .iter()
            .map(|fi| {
                pow *= t;
                fi * &pow
            })
            .collect();
        NormalizedSeries { f }
    }
}

/// Lower-triangular table `b[n][k] = B_{n,k}` for `0 <= k <= n <= n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellTable {
    rows: Vec<Vec<Rational>>,
}

impl BellTable {
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `B_{n,k}`; zero when `k > n`.
    pub fn get(&self, n: usize, k: usize) -> &Rational {
        static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
        self.rows[n].get(k).unwrap_or_else(|| ZERO.get_or_init(Rational::zero))
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn to_json(&self) -> serde_json::Value {
        table_json(&self.rows)
    }
}

/// Full Bell triangle from `B_{n,k+1} = sum_{j=1}^{n-k} f_j B_{n-j,k}`.
pub fn bell_table(f: &NormalizedSeries, n_max: usize) -> BellTable {
    let fs: Vec<Rational> = (0..=n_max).map(|j| f.f(j)).collect();
    let mut rows: Vec<Vec<Rational>> = (0..=n_max).map(|n| vec![Rational::zero(); n + 1]).collect();
    rows[0][0] = Rational::one();
    // column k+1 from column k
    for k in 0..n_max {
        for n in (k + 1)..=n_max {
            let mut acc = Rational::zero();
            for j in 1..=(n - k) {
                let prev = &rows[n - j];
                if k < prev.len() && !fs[j].is_zero() && !prev[k].is_zero() {
                    acc += &fs[j] * &prev[k];
                }
            }
            rows[n][k + 1] = acc;
        }
    }
    BellTable { rows }
}

/// One row `A_{rho,0..=n_max}` of potential polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialRow {
    pub rho: Rational,
    pub a: Vec<Rational>,
}

impl PotentialRow {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rho": format_rational(&self.rho),
            "row": self.a.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

/// `A_{rho,n}` for `n <= n_max`.
///
/// Nonnegative integer `rho` goes through the power recurrence
/// `A_{rho,n} = A_{rho-1,n} + sum_k f_k A_{rho-1,n-k}`; any other rational uses
/// `A_{rho,n} = sum_k binom(rho,k) B_{n,k}`.
pub fn potential_row(rho: &Rational, f: &NormalizedSeries, n_max: usize) -> PotentialRow {
    if rho.is_integer() && !rho.is_negative() {
        let power: usize = rho.to_integer().try_into().unwrap_or(usize::MAX);
        if power <= 64 {
            return potential_row_recurrence(power, f, n_max);
        }
    }
    potential_row_binomial(rho, &bell_table(f, n_max))
}

/// Binomial-sum path over a ready Bell table; valid for every rational `rho`.
pub fn potential_row_binomial(rho: &Rational, bell: &BellTable) -> PotentialRow {
    let n_max = bell.n_max();
    let binoms: Vec<Rational> = (0..=n_max).map(|k| binomial_rational(rho, k)).collect();
    let a = (0..=n_max)
        .map(|n| {
            (0..=n)
                .filter(|&k| !bell.get(n, k).is_zero())
                .fold(Rational::zero(), |acc, k| acc + &binoms[k] * bell.get(n, k))
        })
        .collect();
    PotentialRow { rho: rho.clone(), a }
}

/// Power recurrence for `rho` a nonnegative integer.
pub fn potential_row_recurrence(power: usize, f: &NormalizedSeries, n_max: usize) -> PotentialRow {
    let coeffs: Vec<Rational> = (0..=n_max).map(|k| f.coeff(k)).collect();
    let mut row = unit_row(n_max);
    for _ in 0..power {
        row = convolve_trunc(&row, &coeffs, n_max);
    }
    PotentialRow { rho: Rational::from_integer(power.into()), a: row }
}

/// Square table `A_{j,k}`, `0 <= j, k <= n_max`, row `j` being the first `n_max + 1`
/// coefficients of `F(x)^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialTable {
    rows: Vec<Vec<Rational>>,
}

impl PotentialTable {
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `A_{j,k}`.
    pub fn get(&self, j: usize, k: usize) -> &Rational {
        &self.rows[j][k]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn to_json(&self) -> serde_json::Value {
        table_json(&self.rows)
    }
}

/// `A_{j,k} = sum_i f_i A_{j-1,k-i}` with `f_0 = 1`, seeded by `A_{0,k} = [k = 0]`.
pub fn potential_integer_table(f: &NormalizedSeries, n_max: usize) -> PotentialTable {
    let coeffs: Vec<Rational> = (0..=n_max).map(|k| f.coeff(k)).collect();
    let mut rows = Vec::with_capacity(n_max + 1);
    rows.push(unit_row(n_max));
    for j in 1..=n_max {
        let next = convolve_trunc(&rows[j - 1], &coeffs, n_max);
        rows.push(next);
    }
    PotentialTable { rows }
}

/// Bell triangle recovered from integer potential polynomials via
/// `B_{k,j} = (-1)^j sum_{i=0}^{j} (-1)^i binom(j,i) A_{i,k}`.
pub fn bell_from_potential(f: &NormalizedSeries, n_max: usize) -> BellTable {
    let pot = potential_integer_table(f, n_max);
    bell_from_potential_table(&pot)
}

pub fn bell_from_potential_table(pot: &PotentialTable) -> BellTable {
    let n_max = pot.n_max();
    let rows = (0..=n_max)
        .map(|k| {
            (0..=k)
                .map(|j| {
                    // sum_i (-1)^(i+j) binom(j,i) A_{i,k}
                    let mut acc = Rational::zero();
                    let mut binom = Rational::one();
                    for i in 0..=j {
                        let term = &binom * pot.get(i, k);
                        if (i + j) % 2 == 0 {
                            acc += term;
                        } else {
                            acc -= term;
                        }
                        binom = binom * Rational::from_integer((j - i).into())
                            / Rational::from_integer((i + 1).into());
                    }
                    acc
                })
                .collect()
        })
        .collect();
    BellTable { rows }
}

/// Coefficients of `G(y (F(x) - 1))` as polynomials in `y`: entry `[n][k]` is
/// `g_k B_{n,k}`. Summing a row at `y = 1` gives the composed series.
pub fn compose_outer(g: &[Rational], bell: &BellTable) -> Vec<Vec<Rational>> {
    (0..=bell.n_max())
        .map(|n| {
            (0..=n)
                .map(|k| g.get(k).map(|gk| gk * bell.get(n, k)).unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect()
}

fn unit_row(n_max: usize) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); n_max + 1];
    row[0] = Rational::one();
    row
}

fn convolve_trunc(a: &[Rational], b: &[Rational], n_max: usize) -> Vec<Rational> {
    (0..=n_max)
        .map(|n| {
            (0..=n)
                .filter(|&i| !a[n - i].is_zero() && !b[i].is_zero())
                .fold(Rational::zero(), |acc, i| acc + &b[i] * &a[n - i])
        })
        .collect()
}

fn table_json(rows: &[Vec<Rational>]) -> serde_json::Value {
    serde_json::Value::Array(
        rows.iter()
            .map(|r| serde_json::Value::Array(r.iter().map(|x| format_rational(x).into()).collect()))
            .collect(),
    )
}
