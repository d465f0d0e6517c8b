//! Floating-point layer: reference values by quadrature and numeric checks of the
//! exact expansions. Rationals are converted to `f64` once per term.

mod gamma;
mod quadrature;
mod verify;

use thiserror::Error;

pub use gamma::{gamma_numeric, ln_gamma_numeric, stirling_correction};
pub use quadrature::{integrate_interval, quadrature, Domain, Quadrature};
pub use verify::{
    fit_order, log_grid, partial_sum, verify_igamma_diagonal, verify_laplace_order,
    verify_stirling_series, BuiltinIntegrand, VerificationReport,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("numeric domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge: best estimate {value} +- {err_bound}")]
    NoConvergence { value: f64, err_bound: f64 },
    #[error("need {needed} coefficients, have {have}")]
    Insufficient { needed: usize, have: usize },
    #[error(transparent)]
    Example(#[from] crate::special::ExampleError),
}
