//! Exact coefficients of Laplace-method asymptotic expansions.
//!
//! The crate computes the coefficients `c_n` of
//! `int_a^b exp(-lambda f) g dx ~ exp(-lambda f(a)) sum Gamma((n+beta)/alpha) c_n lambda^(-(n+beta)/alpha)`
//! over exact rationals by three independent formulas, checks them against each
//! other, reproduces the Stirling coefficients of the gamma function and the
//! polynomials of the incomplete gamma function expansion, and verifies the
//! resulting series numerically against quadrature.

pub mod bell;
pub mod coeffs;
pub mod exact;
pub mod io;
pub mod numeric;
pub mod special;

pub use coeffs::{LaplaceProblem, ProblemError, Route, ScaledCoefficients};
pub use exact::Rational;
