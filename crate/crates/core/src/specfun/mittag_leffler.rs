//! Two-parameter Mittag-Leffler function by direct power series.
//!
//! `E_{α,β}(x) = Σ_{n≥0} xⁿ / Γ(αn + β)`
//!
//! Only the series is implemented. For negative `x` the terms alternate and
//! the largest one grows like `exp(|x|^{1/α})`; once a term passes
//! `e^700` (equivalently `|x| > 700^α`) the evaluation is refused with
//! [`SpecFunError::Precision`]. Between that point and moderate `|x|` the
//! result is returned with a rounding estimate that reflects the
//! cancellation.

use super::gamma::log_gamma;
use super::series::{sum_series, Blowup, SeriesControl, SeriesSum, Term};
use super::SpecFunError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    alpha: f64,
    beta: f64,
}

impl MLParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, SpecFunError> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(SpecFunError::Domain {
                what: "Mittag-Leffler alpha",
                value: alpha,
            });
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(SpecFunError::Domain {
                what: "Mittag-Leffler beta",
                value: beta,
            });
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

fn blowup_kind(x: f64) -> Blowup {
    if x < 0.0 {
        Blowup::Cancellation
    } else {
        Blowup::Overflow
    }
}

/// `E_{α,β}(x)`.
pub fn mittag_leffler(p: MLParams, x: f64, ctl: &SeriesControl) -> Result<SeriesSum, SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::Domain {
            what: "Mittag-Leffler argument",
            value: x,
        });
    }
    let ln_x = x.abs().ln();
    let sign = x.signum();
    sum_series(ctl, blowup_kind(x), |r| {
        let lg = log_gamma(p.alpha * r as f64 + p.beta)?;
        if r == 0 {
            return Ok(Term::new(1.0, -lg, lg.abs()));
        }
        if x == 0.0 {
            return Ok(Term::ZERO);
        }
        let rf = r as f64;
        let s = if r % 2 == 1 { sign } else { 1.0 };
        Ok(Term::new(s, rf * ln_x - lg, (rf * ln_x).abs() + lg.abs()))
    })
}

/// `Γ(β)·E_{α,β}(x)`, assembled term by term as
/// `exp(ln Γ(β) - ln Γ(β + αr))·xʳ` so nothing overflows when `Γ(β)` alone
/// would.
pub fn scaled_ml(p: MLParams, x: f64, ctl: &SeriesControl) -> Result<SeriesSum, SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::Domain {
            what: "Mittag-Leffler argument",
            value: x,
        });
    }
    let lg_beta = log_gamma(p.beta)?;
    let ln_x = x.abs().ln();
    let sign = x.signum();
    sum_series(ctl, blowup_kind(x), |r| {
        if r == 0 {
            return Ok(Term::new(1.0, 0.0, 0.0));
        }
        if x == 0.0 {
            return Ok(Term::ZERO);
        }
        let rf = r as f64;
        let lg = log_gamma(p.alpha * rf + p.beta)?;
        let s = if r % 2 == 1 { sign } else { 1.0 };
        Ok(Term::new(
            s,
            rf * ln_x + lg_beta - lg,
            (rf * ln_x).abs() + lg_beta.abs() + lg.abs(),
        ))
    })
}
