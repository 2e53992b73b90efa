//! Special functions, closed-form series solutions and an independent
//! Volterra oracle for fractional kinetic equations driven by the
//! generalized k-Bessel function.

// `!(x > 0.0)` style guards are used on purpose so NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod fracoracle;
pub mod kinetics;
pub mod specfun;
