//! Exact scalar arithmetic and the integer kernels used by every coefficient route.
//!
//! All scalars are [`Rational`]s (arbitrary-precision, always in lowest terms with a
//! positive denominator). Nothing in this module falls back to floating point.

mod rational;
mod stirling;

pub use rational::{
    binomial_rational, factorial, format_rational, gamma_half_ratio, parse_rational, pow_i64,
    rising_factorial, sign_power, Rational, RationalParseError,
};
pub use stirling::{
    install_triangle, stirling_first, stirling_second, triangle, StirlingKind, StirlingTriangle,
    TriangleError,
};

/// Small-integer convenience constructor.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `p/q` from machine integers. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}
