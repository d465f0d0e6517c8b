//! JSON forms of problems and coefficient sets. Rationals travel as canonical
//! `"p/q"` strings; keys are emitted sorted so output is byte-stable.

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::coeffs::{LaplaceProblem, ProblemError, ScaledCoefficients};
use crate::exact::{format_rational, parse_rational, Rational, RationalParseError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid problem JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {source}")]
    Rational { field: String, source: RationalParseError },
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Text(String),
    Int(i64),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    alpha: RawRational,
    beta: RawRational,
    a: Vec<RawRational>,
    b: Vec<RawRational>,
    n_max: usize,
    #[serde(default)]
    pad: bool,
}

fn convert(field: String, raw: RawRational) -> Result<Rational, InputError> {
    match raw {
        RawRational::Int(i) => Ok(Rational::from_integer(i.into())),
        RawRational::Text(s) => parse_rational(&s).map_err(|source| InputError::Rational { field, source }),
    }
}

/// Parses `{alpha, beta, a, b, n_max, pad}`. Preconditions are not checked here;
/// call [`LaplaceProblem::validate`].
pub fn parse_problem(text: &str) -> Result<LaplaceProblem, InputError> {
    let raw: RawProblem = serde_json::from_str(text)?;
    let list = |name: &str, v: Vec<RawRational>| -> Result<Vec<Rational>, InputError> {
        v.into_iter().enumerate().map(|(k, r)| convert(format!("{name}[{k}]"), r)).collect()
    };
    let p = LaplaceProblem::new(
        convert("alpha".into(), raw.alpha)?,
        convert("beta".into(), raw.beta)?,
        list("a", raw.a)?,
        list("b", raw.b)?,
        raw.n_max,
    );
    Ok(p.with_pad(raw.pad))
}

pub fn rationals_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(format_rational(r))).collect())
}

pub fn problem_json(p: &LaplaceProblem) -> Value {
    json!({
        "alpha": format_rational(&p.alpha),
        "beta": format_rational(&p.beta),
        "a": rationals_json(&p.a),
        "b": rationals_json(&p.b),
        "n_max": p.n_max,
        "pad": p.pad,
    })
}

/// `{scaled_coefficients, exponents, route}`.
pub fn coefficients_json(c: &ScaledCoefficients, route: &str) -> Value {
    json!({
        "scaled_coefficients": rationals_json(&c.c_sc),
        "exponents": rationals_json(&c.exponents()),
        "route": route,
    })
}

/// Pretty JSON with a trailing newline; `serde_json` maps keep keys sorted.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
