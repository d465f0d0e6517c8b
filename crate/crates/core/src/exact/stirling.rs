use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StirlingKind {
    /// Unsigned (signless) numbers of the first kind, `s(n+1,k) = s(n,k-1) + n s(n,k)`.
    FirstUnsigned,
    /// Numbers of the second kind, `S(n+1,k) = S(n,k-1) + k S(n,k)`.
    Second,
}

#[derive(Debug, Error)]
pub enum TriangleError {
    #[error("triangle row {row} does not satisfy the {kind:?} recurrence")]
    Recurrence { kind: StirlingKind, row: usize },
    #[error("triangle row {row} has {len} entries, expected {}", row + 1)]
    Shape { row: usize, len: usize },
    #[error("bad integer {0:?} in triangle")]
    Integer(String),
}

/// Rows `0..=n_max` of a Stirling triangle; row `n` holds `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTriangle {
    kind: StirlingKind,
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTriangle {
    pub fn new(kind: StirlingKind, n_max: usize) -> Self {
        let mut t = StirlingTriangle { kind, rows: vec![vec![BigInt::one()]] };
        t.extend_to(n_max);
        t
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Entry `(n, k)`; zero outside `0 <= k <= n`. Panics if `n > n_max`.
    pub fn get(&self, n: usize, k: usize) -> &BigInt {
        static ZERO: OnceLock<BigInt> = OnceLock::new();
        let row = &self.rows[n];
        row.get(k).unwrap_or_else(|| ZERO.get_or_init(BigInt::zero))
    }

    pub fn extend_to(&mut self, n_max: usize) {
        while self.rows.len() <= n_max {
            let next = next_row(self.kind, self.rows.last().expect("row 0 always present"));
            self.rows.push(next);
        }
    }

    /// Rebuilds a triangle from serialized rows, checking shape and recurrence.
    pub fn from_rows(kind: StirlingKind, rows: Vec<Vec<BigInt>>) -> Result<Self, TriangleError> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(TriangleError::Shape { row: n, len: row.len() });
            }
            let expected = if n == 0 { vec![BigInt::one()] } else { next_row(kind, &rows[n - 1]) };
            if *row != expected {
                return Err(TriangleError::Recurrence { kind, row: n });
            }
        }
        if rows.is_empty() {
            return Ok(StirlingTriangle::new(kind, 0));
        }
        Ok(StirlingTriangle { kind, rows })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
        serde_json::json!({ "kind": self.kind, "rows": rows })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, TriangleError> {
        #[derive(Deserialize)]
        struct Raw {
            kind: StirlingKind,
            rows: Vec<Vec<String>>,
        }
        let raw: Raw = serde_json::from_value(value.clone())
            .map_err(|e| TriangleError::Integer(e.to_string()))?;
        let rows = raw
            .rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|s| s.parse::<BigInt>().map_err(|_| TriangleError::Integer(s)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(raw.kind, rows)
    }
}

fn next_row(kind: StirlingKind, prev: &[BigInt]) -> Vec<BigInt> {
    let n = prev.len() - 1;
    let mut row = vec![BigInt::zero(); n + 2];
    for k in 1..=n + 1 {
        let diag = &prev[k - 1];
        let carry = match (prev.get(k), kind) {
            (Some(v), StirlingKind::FirstUnsigned) => v * n,
            (Some(v), StirlingKind::Second) => v * k,
            (None, _) => BigInt::zero(),
        };
        row[k] = diag + carry;
    }
    row
}

fn cache(kind: StirlingKind) -> &'static RwLock<Arc<StirlingTriangle>> {
    static FIRST: OnceLock<RwLock<Arc<StirlingTriangle>>> = OnceLock::new();
    static SECOND: OnceLock<RwLock<Arc<StirlingTriangle>>> = OnceLock::new();
    let cell = match kind {
        StirlingKind::FirstUnsigned => &FIRST,
        StirlingKind::Second => &SECOND,
    };
    cell.get_or_init(|| RwLock::new(Arc::new(StirlingTriangle::new(kind, 0))))
}

/// Shared process-wide triangle covering at least rows `0..=n_max`.
///
/// The cache only ever grows; readers keep their `Arc` snapshot while it is extended.
pub fn triangle(kind: StirlingKind, n_max: usize) -> Arc<StirlingTriangle> {
    let lock = cache(kind);
    {
        let current = lock.read().expect("stirling cache poisoned");
        if current.n_max() >= n_max {
            return Arc::clone(&current);
        }
    }
    let mut guard = lock.write().expect("stirling cache poisoned");
    if guard.n_max() < n_max {
        let mut grown = (**guard).clone();
        grown.extend_to(n_max);
        *guard = Arc::new(grown);
    }
    Arc::clone(&guard)
}

/// Seeds the process cache with a previously persisted triangle if it is larger.
pub fn install_triangle(t: StirlingTriangle) {
    let mut guard = cache(t.kind).write().expect("stirling cache poisoned");
    if t.n_max() > guard.n_max() {
        *guard = Arc::new(t);
    }
}

/// Unsigned Stirling number of the first kind; zero outside the triangle.
pub fn stirling_first(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    triangle(StirlingKind::FirstUnsigned, n).get(n, k).clone()
}

/// Stirling number of the second kind; zero outside the triangle.
pub fn stirling_second(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    triangle(StirlingKind::Second, n).get(n, k).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{factorial, int, Rational};

    #[test]
    fn small_values() {
        assert_eq!(stirling_first(3, 1), BigInt::from(2));
        assert_eq!(stirling_second(4, 2), BigInt::from(7));
        assert_eq!(stirling_first(5, 2), BigInt::from(50));
        assert_eq!(stirling_first(6, 3), BigInt::from(225));
        assert_eq!(stirling_second(6, 2), BigInt::from(31));
        assert_eq!(stirling_second(5, 3), BigInt::from(25));
    }

    #[test]
    fn edges_of_triangle() {
        for n in 0..30 {
            assert_eq!(stirling_first(n, n), BigInt::one());
            assert_eq!(stirling_second(n, n), BigInt::one());
            assert!(stirling_first(n, n + 1).is_zero());
            assert!(stirling_second(n, n + 3).is_zero());
            if n > 0 {
                assert!(stirling_first(n, 0).is_zero());
                assert!(stirling_second(n, 0).is_zero());
            }
        }
        assert_eq!(stirling_first(0, 0), BigInt::one());
    }

    #[test]
    fn first_kind_rows_sum_to_factorial() {
        let t = triangle(StirlingKind::FirstUnsigned, 25);
        for n in 0..=25 {
            let s: BigInt = t.rows()[n].iter().sum();
            assert_eq!(s, factorial(n));
        }
    }

    // naive truncated polynomial product, coefficients in x^0..=deg
    fn mul_trunc(a: &[Rational], b: &[Rational], deg: usize) -> Vec<Rational> {
        let mut out = vec![int(0); deg + 1];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                if i + j <= deg {
                    out[i + j] += ai * bj;
                }
            }
        }
        out
    }

    #[test]
    fn generating_function_oracle() {
        // -log(1+x) = sum_{m>=1} (-1)^m x^m / m ;  e^x - 1 = sum_{m>=1} x^m / m!
        for n in 0..=12usize {
            let deg = n + 1;
            let neg_log: Vec<Rational> = (0..=deg)
                .map(|m| {
                    if m == 0 {
                        int(0)
                    } else {
                        let sgn = if m % 2 == 0 { 1 } else { -1 };
                        Rational::new(sgn.into(), (m as i64).into())
                    }
                })
                .collect();
            let exp_m1: Vec<Rational> = (0..=deg)
                .map(|m| if m == 0 { int(0) } else { Rational::new(1.into(), factorial(m)) })
                .collect();
            let mut pow_log = vec![int(1)];
            let mut pow_exp = vec![int(1)];
            for j in 0..=n {
                let scale = Rational::new(factorial(n), factorial(j));
                let got_s = pow_log.get(n).cloned().unwrap_or_else(|| int(0)) * &scale;
                let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                assert_eq!(got_s, sign * Rational::from_integer(stirling_first(n, j)), "s({n},{j})");
                let got_big_s = pow_exp.get(n).cloned().unwrap_or_else(|| int(0)) * &scale;
                assert_eq!(got_big_s, Rational::from_integer(stirling_second(n, j)), "S({n},{j})");
                pow_log = mul_trunc(&pow_log, &neg_log, deg);
                pow_exp = mul_trunc(&pow_exp, &exp_m1, deg);
            }
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let t = StirlingTriangle::new(StirlingKind::Second, 12);
        let back = StirlingTriangle::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);

        let mut rows = t.rows().to_vec();
        rows[7][3] += 1;
        assert!(matches!(
            StirlingTriangle::from_rows(StirlingKind::Second, rows),
            Err(TriangleError::Recurrence { row: 7, .. })
        ));
    }

    #[test]
    fn cache_grows_monotonically() {
        let small = triangle(StirlingKind::Second, 5);
        let big = triangle(StirlingKind::Second, 40);
        assert!(big.n_max() >= 40);
        assert!(triangle(StirlingKind::Second, 3).n_max() >= 40);
        assert_eq!(small.rows()[5], big.rows()[5]);
    }
}
