use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use super::NumericError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// `(0, inf)`
    HalfLine,
    /// `(0, 1)`
    UnitInterval,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quadrature {
    pub value: f64,
    pub err_bound: f64,
}

const LOW: usize = 12;
const HIGH: usize = 24;
const MAX_PANELS: usize = 4000;
const TAIL_RATIO: f64 = 1e-18;

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Gauss-Legendre rule on `[-1, 1]` by Newton iteration on `P_n`.
fn legendre_rule(n: usize) -> Rule {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    Rule { nodes, weights }
}

fn rules() -> &'static (Rule, Rule) {
    static RULES: OnceLock<(Rule, Rule)> = OnceLock::new();
    RULES.get_or_init(|| (legendre_rule(LOW), legendre_rule(HIGH)))
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    abs: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel, NumericError> {
    let (low, high) = rules();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let apply = |rule: &Rule| -> (f64, f64) {
        let mut s = 0.0;
        let mut s_abs = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let y = f(mid + half * x);
            s += w * y;
            s_abs += w * y.abs();
        }
        (s * half, s_abs * half)
    };
    let (coarse, _) = apply(low);
    let (fine, abs) = apply(high);
    if !fine.is_finite() || !coarse.is_finite() {
        return Err(NumericError::Domain(format!("integrand not finite on [{a}, {b}]")));
    }
    let err = (fine - coarse).abs().max(4.0 * f64::EPSILON * abs);
    Ok(Panel { a, b, value: fine, abs, err })
}

/// Adaptive Gauss-Legendre on `[a, b]` until the summed error estimate is at most
/// `tol * integral |f|`. The request is clamped to `16 eps` to stay above roundoff.
pub fn integrate_interval<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Quadrature, NumericError> {
    integrate_panels(&f, &geometric_breaks(a, b), tol)
}

// breaks crowded towards `a`, where the built-in integrands have their peak
fn geometric_breaks(a: f64, b: f64) -> Vec<f64> {
    let mut breaks = vec![a];
    for k in (0..12).rev() {
        breaks.push(a + (b - a) / f64::from(1u32 << k) / 2.0);
    }
    breaks.push(b);
    breaks
}

fn integrate_panels<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    tol: f64,
) -> Result<Quadrature, NumericError> {
    let tol = tol.max(16.0 * f64::EPSILON);
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        heap.push(panel(f, w[0], w[1])?);
    }
    loop {
        let (value, abs, err) =
            heap.iter().fold((0.0, 0.0, 0.0), |(v, s, e), p| (v + p.value, s + p.abs, e + p.err));
        if err <= tol * abs || abs == 0.0 {
            return Ok(Quadrature { value, err_bound: err });
        }
        if heap.len() >= MAX_PANELS {
            return Err(NumericError::NoConvergence { value, err_bound: err });
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(NumericError::NoConvergence { value, err_bound: err });
        }
        heap.push(panel(f, worst.a, mid)?);
        heap.push(panel(f, mid, worst.b)?);
    }
}

/// Cut point `x*` where `|f|` first falls below `1e-18` of its sampled peak, with an
/// exponential-envelope bound on the integral beyond it.
fn half_line_cut<F: Fn(f64) -> f64>(f: &F) -> Result<(f64, f64), NumericError> {
    let mut peak: f64 = 0.0;
    let mut prev: Option<(f64, f64)> = None;
    // x = 2^(j/8) from about 1e-9 up to about 1e9
    for j in -240..=240i32 {
        let x = 2f64.powf(f64::from(j) / 8.0);
        let y = f(x).abs();
        if !y.is_finite() {
            return Err(NumericError::Domain(format!("integrand not finite at {x}")));
        }
        peak = peak.max(y);
        if peak > 0.0 && y < TAIL_RATIO * peak {
            let tail = match prev {
                _ if y == 0.0 => 0.0,
                Some((xp, yp)) if yp > y => {
                    let rate = (yp / y).ln() / (x - xp);
                    y / rate
                }
                _ => return Err(NumericError::Domain("integrand tail is not decaying".into())),
            };
            return Ok((x, tail));
        }
        prev = Some((x, y));
    }
    Err(NumericError::Domain("integrand does not decay on the half line".into()))
}

/// Integral of `f` over the domain with `err_bound` covering the quadrature estimate
/// and, on the half line, the truncated tail.
pub fn quadrature<F: Fn(f64) -> f64>(
    f: F,
    domain: Domain,
    tol: f64,
) -> Result<Quadrature, NumericError> {
    match domain {
        Domain::UnitInterval => integrate_interval(f, 0.0, 1.0, tol),
        Domain::HalfLine => {
            let (cut, tail) = half_line_cut(&f)?;
            match integrate_interval(&f, 0.0, cut, tol) {
                Ok(q) => Ok(Quadrature { value: q.value, err_bound: q.err_bound + tail }),
                Err(NumericError::NoConvergence { value, err_bound }) => {
                    Err(NumericError::NoConvergence { value, err_bound: err_bound + tail })
                }
                Err(e) => Err(e),
            }
        }
    }
}
