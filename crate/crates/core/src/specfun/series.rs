//! Truncation-controlled summation of series whose terms are supplied in
//! log-magnitude form.

use super::SpecFunError;

/// Largest admissible log-magnitude of a single term. Past this the
/// partial sums have lost every significant digit (or overflow).
pub const MAX_LOG_TERM: f64 = 700.0;

/// Truncation policy shared by every series in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    max_terms: usize,
    rel_tol: f64,
    stagnation_window: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 500,
            rel_tol: 1e-15,
            stagnation_window: 3,
        }
    }
}

impl SeriesControl {
    pub fn new(
        max_terms: usize,
        rel_tol: f64,
        stagnation_window: usize,
    ) -> Result<Self, SpecFunError> {
        if max_terms < 1 {
            return Err(SpecFunError::InvalidParameter(
                "max_terms must be at least 1".into(),
            ));
        }
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(SpecFunError::InvalidParameter(format!(
                "rel_tol must lie in (0, 1), got {rel_tol}"
            )));
        }
        if stagnation_window < 1 {
            return Err(SpecFunError::InvalidParameter(
                "stagnation_window must be at least 1".into(),
            ));
        }
        Ok(Self {
            max_terms,
            rel_tol,
            stagnation_window,
        })
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn stagnation_window(&self) -> usize {
        self.stagnation_window
    }

    /// Same budget, tolerance divided by `factor` (used for inner series so
    /// their error stays below the outer stopping test).
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol / factor,
            ..*self
        }
    }

    pub fn with_max_terms(&self, max_terms: usize) -> Self {
        Self {
            max_terms: max_terms.max(1),
            ..*self
        }
    }
}

/// One series term as `sign * exp(log_mag)`.
///
/// `log_scale` is the sum of absolute values of the logarithms that were
/// combined into `log_mag`; it sizes the rounding error of the term.
#[derive(Debug, Clone, Copy)]
pub struct Term {
    pub sign: f64,
    pub log_mag: f64,
    pub log_scale: f64,
}

impl Term {
    pub const ZERO: Term = Term {
        sign: 0.0,
        log_mag: f64::NEG_INFINITY,
        log_scale: 0.0,
    };

    pub fn new(sign: f64, log_mag: f64, log_scale: f64) -> Self {
        if sign == 0.0 || log_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Self {
            sign: sign.signum(),
            log_mag,
            log_scale,
        }
    }

    /// Term for an ordinary signed real value.
    pub fn from_value(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            Self::new(v.signum(), v.abs().ln(), 0.0)
        }
    }

    pub fn value(&self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.log_mag.exp()
        }
    }
}

/// Result of a truncated series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    /// Number of terms added.
    pub terms: usize,
    /// Estimated magnitude of the neglected tail.
    pub tail: f64,
    /// Estimated floating-point error of the terms that were added.
    pub rounding: f64,
    /// Largest log-magnitude among the added terms.
    pub max_log_term: f64,
}

impl SeriesSum {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            terms: 1,
            tail: 0.0,
            rounding: 0.0,
            max_log_term: if value == 0.0 {
                f64::NEG_INFINITY
            } else {
                value.abs().ln()
            },
        }
    }

    /// Tail plus rounding: bound on |value - exact sum|.
    pub fn error_bound(&self) -> f64 {
        self.tail + self.rounding
    }

    /// Multiply by an exactly known scalar.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            tail: self.tail * factor.abs(),
            rounding: self.rounding * factor.abs(),
            max_log_term: self.max_log_term + factor.abs().ln(),
            ..self
        }
    }
}

/// Neumaier compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// What to report when a term exceeds [`MAX_LOG_TERM`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Blowup {
    /// Alternating series: the digits cancel away.
    Cancellation,
    /// Same-sign series: the sum itself overflows.
    Overflow,
}

/// Sums `term(0), term(1), ...` under the stagnation rule of `ctl`.
///
/// Stops once `stagnation_window` consecutive terms each satisfy
/// `|term| <= rel_tol * |partial sum|`. Running out of `max_terms` first is
/// a non-convergence error.
pub(crate) fn sum_series<F>(
    ctl: &SeriesControl,
    blowup: Blowup,
    mut term: F,
) -> Result<SeriesSum, SpecFunError>
where
    F: FnMut(usize) -> Result<Term, SpecFunError>,
{
    let mut acc = CompensatedSum::default();
    let mut abs_weighted = 0.0;
    let mut small_run = 0usize;
    let mut max_log = f64::NEG_INFINITY;
    let mut last = 0.0f64;
    let mut prev;

    for n in 0..ctl.max_terms {
        let t = term(n)?;
        if t.log_mag > MAX_LOG_TERM {
            return Err(match blowup {
                Blowup::Cancellation => SpecFunError::Precision {
                    index: n,
                    log_term: t.log_mag,
                },
                Blowup::Overflow => SpecFunError::Overflow {
                    log_value: t.log_mag,
                },
            });
        }
        max_log = max_log.max(t.log_mag);
        let v = t.value();
        acc.add(v);
        abs_weighted += v.abs() * (4.0 + t.log_scale);
        prev = last;
        last = v.abs();

        let partial = acc.value();
        if last <= ctl.rel_tol * partial.abs() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= ctl.stagnation_window {
            return Ok(SeriesSum {
                value: partial,
                terms: n + 1,
                tail: tail_bound(last, prev, ctl.stagnation_window),
                rounding: f64::EPSILON * abs_weighted,
                max_log_term: max_log,
            });
        }
    }
    Err(SpecFunError::NonConvergence {
        terms: ctl.max_terms,
        partial: acc.value(),
    })
}

/// Geometric tail bound from the last two term magnitudes.
fn tail_bound(last: f64, prev: f64, window: usize) -> f64 {
    if last == 0.0 {
        return 0.0;
    }
    let q = if prev > 0.0 { last / prev } else { 1.0 };
    if q < 1.0 {
        last * q / (1.0 - q)
    } else {
        last * window as f64
    }
}
