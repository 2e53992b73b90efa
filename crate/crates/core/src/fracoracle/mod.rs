//! Independent numerical checks for the kinetic series: product-trapezoidal
//! quadrature of the Riemann-Liouville integral, a direct Volterra solver,
//! the constant-forcing baseline, an equation residual and a Laplace-domain
//! defect.

mod laplace;
mod quadrature;
mod residual;
mod volterra;

pub use laplace::{laplace_check, laplace_defect, laplace_transform, LaplaceOptions};
pub use quadrature::{rl_integral, QuadratureGrid};
pub use residual::{residual, residual_values};
pub use volterra::{haubold_mathai, solve_problem, solve_volterra, OracleSolution};

use crate::kinetics::KineticsError;
use crate::specfun::SpecFunError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unstable step at node {node}: 1 + rate^nu w = {diag}")]
    Unstable { node: usize, diag: f64 },
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Kinetics(#[from] KineticsError),
}
