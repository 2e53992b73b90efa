//! The generalized k-Bessel function ω and its two named reductions.
//!
//! ```text
//! ω(z) = Σ_{n≥0} (-1)ⁿ cⁿ (γ)_{n,k} / [Γ_k(μ + λn + (b+1)/2) (n!)²] · (z/2)^{μ+2n}
//! ```
//!
//! With `b = c = 1` this is `(z/2)^μ J(z²/2)` (k-Bessel of the first kind);
//! with `b = -1, c = 1` it is `(z/2)^μ W(-z²/2)` (k-Wright).
//!
//! The numerator symbol of `J` is `(γ)_{n,k}`. Printed definitions of the
//! k-Bessel function sometimes carry `(λ)_{n,k}` there, which is not
//! compatible with the reduction of ω above.

use super::gamma::{log_factorial, log_k_gamma, log_k_pochhammer};
use super::series::{sum_series, Blowup, SeriesControl, SeriesSum, Term};
use super::SpecFunError;

/// Parameter tuple `(k, γ, λ, μ, b, c)` of ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KBesselParams {
    pub k: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub mu: f64,
    pub b: f64,
    pub c: f64,
}

impl KBesselParams {
    pub fn new(
        k: f64,
        gamma: f64,
        lambda: f64,
        mu: f64,
        b: f64,
        c: f64,
    ) -> Result<Self, SpecFunError> {
        let p = Self {
            k,
            gamma,
            lambda,
            mu,
            b,
            c,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), SpecFunError> {
        for (name, v) in [
            ("k", self.k),
            ("gamma", self.gamma),
            ("lambda", self.lambda),
            ("mu", self.mu),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SpecFunError::InvalidParameter(format!(
                    "{name} must be a positive finite number, got {v}"
                )));
            }
        }
        if !self.b.is_finite() || !self.c.is_finite() {
            return Err(SpecFunError::InvalidParameter(
                "b and c must be finite".into(),
            ));
        }
        // λ > 0, so the k-gamma argument is smallest at n = 0.
        let first = self.denominator_arg(0);
        if !(first > 0.0) {
            return Err(SpecFunError::Pole {
                index: 0,
                arg: first,
            });
        }
        Ok(())
    }

    fn denominator_arg(&self, n: usize) -> f64 {
        self.mu + self.lambda * n as f64 + (self.b + 1.0) / 2.0
    }
}

fn alternating(sign: f64, n: usize) -> f64 {
    if n % 2 == 1 {
        sign
    } else {
        1.0
    }
}

/// ω(z) for `z ≥ 0`.
pub fn gen_k_bessel(
    p: &KBesselParams,
    z: f64,
    ctl: &SeriesControl,
) -> Result<SeriesSum, SpecFunError> {
    p.validate()?;
    if !(z >= 0.0) || !z.is_finite() {
        return Err(SpecFunError::Domain {
            what: "generalized k-Bessel argument",
            value: z,
        });
    }
    if z == 0.0 {
        return Ok(SeriesSum::exact(0.0));
    }
    let ln_half_z = (z / 2.0).ln();
    let ln_c = p.c.abs().ln();
    // (-1)ⁿ cⁿ has sign (-sign c)ⁿ
    let step_sign = -p.c.signum();
    sum_series(ctl, Blowup::Cancellation, |n| {
        if n > 0 && p.c == 0.0 {
            return Ok(Term::ZERO);
        }
        let arg = p.denominator_arg(n);
        if !(arg > 0.0) {
            return Err(SpecFunError::Pole { index: n, arg });
        }
        let nf = n as f64;
        let poch = log_k_pochhammer(p.gamma, n as u32, p.k)?;
        let kg = log_k_gamma(arg, p.k)?;
        let fact = 2.0 * log_factorial(n);
        let pow = (p.mu + 2.0 * nf) * ln_half_z;
        let cpow = if n == 0 { 0.0 } else { nf * ln_c };
        Ok(Term::new(
            alternating(step_sign, n),
            cpow + poch - kg - fact + pow,
            cpow.abs() + poch.abs() + kg.abs() + fact + pow.abs(),
        ))
    })
}

/// k-Bessel function of the first kind
/// `J(w) = Σ (γ)_{n,k} / Γ_k(λn + ν + 1) · (-1)ⁿ (w/2)ⁿ / (n!)²`.
pub fn k_bessel_j(
    k: f64,
    gamma: f64,
    lambda: f64,
    nu_order: f64,
    w: f64,
    ctl: &SeriesControl,
) -> Result<SeriesSum, SpecFunError> {
    // b = 1 makes the shared validation check Γ_k(ν + 1).
    KBesselParams::new(k, gamma, lambda, nu_order, 1.0, 1.0)?;
    power_series_kgamma(k, gamma, lambda, nu_order + 1.0, -w, ctl)
}

/// k-Wright function
/// `W(x) = Σ (γ)_{n,k} / Γ_k(λn + μ) · (x/2)ⁿ / (n!)²`.
pub fn k_wright_w(
    k: f64,
    gamma: f64,
    lambda: f64,
    mu: f64,
    x: f64,
    ctl: &SeriesControl,
) -> Result<SeriesSum, SpecFunError> {
    KBesselParams::new(k, gamma, lambda, mu, -1.0, 1.0)?;
    power_series_kgamma(k, gamma, lambda, mu, x, ctl)
}

/// `Σ (γ)_{n,k} / Γ_k(λn + shift) · (x/2)ⁿ / (n!)²`.
fn power_series_kgamma(
    k: f64,
    gamma: f64,
    lambda: f64,
    shift: f64,
    x: f64,
    ctl: &SeriesControl,
) -> Result<SeriesSum, SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::Domain {
            what: "series argument",
            value: x,
        });
    }
    let ln_half_x = (x / 2.0).abs().ln();
    let sign = x.signum();
    let blowup = if x < 0.0 {
        Blowup::Cancellation
    } else {
        Blowup::Overflow
    };
    sum_series(ctl, blowup, |n| {
        let arg = lambda * n as f64 + shift;
        if !(arg > 0.0) {
            return Err(SpecFunError::Pole { index: n, arg });
        }
        let kg = log_k_gamma(arg, k)?;
        if n == 0 {
            return Ok(Term::new(1.0, -kg, kg.abs()));
        }
        if x == 0.0 {
            return Ok(Term::ZERO);
        }
        let nf = n as f64;
        let poch = log_k_pochhammer(gamma, n as u32, k)?;
        let fact = 2.0 * log_factorial(n);
        let pow = nf * ln_half_x;
        Ok(Term::new(
            alternating(sign, n),
            poch - kg - fact + pow,
            poch.abs() + kg.abs() + fact + pow.abs(),
        ))
    })
}
