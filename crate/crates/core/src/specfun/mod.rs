//! Real-valued special functions evaluated as truncation-controlled series.
//!
//! Every series term is built as a sign and a log-magnitude, exponentiated,
//! and accumulated with compensated summation. Any Γ or Γ_k argument that is
//! not strictly positive inside the truncation horizon is an error.

mod bessel;
mod fox_wright;
mod gamma;
mod mittag_leffler;
mod series;

pub use bessel::{gen_k_bessel, k_bessel_j, k_wright_w, KBesselParams};
pub use fox_wright::{fox_wright, FoxWrightSpec};
pub use gamma::{k_gamma, k_pochhammer, log_gamma, log_k_gamma, log_k_pochhammer};
pub use mittag_leffler::{mittag_leffler, scaled_ml, MLParams};
pub use series::{CompensatedSum, SeriesControl, SeriesSum, Term, MAX_LOG_TERM};

pub(crate) use gamma::log_factorial;
pub(crate) use series::{sum_series, Blowup};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("gamma argument {arg} is not positive at series index {index}")]
    Pole { index: usize, arg: f64 },
    #[error("result overflows f64 (log value {log_value})")]
    Overflow { log_value: f64 },
    #[error("series did not settle within {terms} terms (partial sum {partial})")]
    NonConvergence { terms: usize, partial: f64 },
    #[error("cancellation guard tripped at term {index} (log magnitude {log_term})")]
    Precision { index: usize, log_term: f64 },
    #[error("Fox-Wright spec rejected: sum(beta) - sum(alpha) = {margin} must exceed -1")]
    RejectedSpec { margin: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
