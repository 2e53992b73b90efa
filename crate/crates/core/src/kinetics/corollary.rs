//! Special cases of the kinetic solutions.
//!
//! * `b = c = 1`: ω(z) = (z/2)^μ J(z²/2), the k-Bessel reduction.
//! * `b = -1, c = 1`: ω(z) = (z/2)^μ W(-z²/2), the k-Wright reduction.
//! * any `b, c`: ω rewritten with ordinary gammas as a ₁ψ₂ Fox-Wright series.
//!
//! For the ₁ψ₂ form, substituting `(γ)_{n,k} = kⁿ (γ/k)_n` and
//! `Γ_k(x) = k^{x/k-1} Γ(x/k)` term by term gives
//!
//! ```text
//! ω(z) = k^{1-μ/k-(b+1)/(2k)} / Γ(γ/k) · (z/2)^μ
//!        · ₁ψ₂[(γ/k, 1); (μ/k + (b+1)/(2k), λ/k), (1, 1) | -c k^{1-λ/k} z²/4]
//! ```

use super::{KineticProblem, KineticsError, PointValue, Variant};
use crate::specfun::{
    fox_wright, k_bessel_j, k_gamma, k_pochhammer, k_wright_w, log_gamma, scaled_ml, FoxWrightSpec,
    KBesselParams, MLParams, SeriesControl, SeriesSum,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// `b = c = 1`
    BesselJ,
    /// `b = -1, c = 1`
    WrightW,
}

impl Reduction {
    fn check(self, p: &KBesselParams) -> Result<(), KineticsError> {
        let (b, c) = match self {
            Reduction::BesselJ => (1.0, 1.0),
            Reduction::WrightW => (-1.0, 1.0),
        };
        if p.b == b && p.c == c {
            Ok(())
        } else {
            Err(KineticsError::Reduction(format!(
                "{self:?} needs b = {b}, c = {c}; got b = {}, c = {}",
                p.b, p.c
            )))
        }
    }

    /// Shift `s` in the reduced denominator `Γ_k(μ + λn + s)`.
    fn shift(self) -> f64 {
        match self {
            Reduction::BesselJ => 1.0,
            Reduction::WrightW => 0.0,
        }
    }
}

/// The reduced forcing term `(z/2)^μ J(z²/2)` or `(z/2)^μ W(-z²/2)`.
pub fn corollary_source(
    params: &KBesselParams,
    reduction: Reduction,
    z: f64,
    ctl: &SeriesControl,
) -> Result<SeriesSum, KineticsError> {
    params.validate()?;
    reduction.check(params)?;
    if !(z >= 0.0) {
        return Err(KineticsError::InvalidGrid(format!(
            "source argument must be non-negative, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(SeriesSum::exact(0.0));
    }
    let p = params;
    let inner = match reduction {
        Reduction::BesselJ => k_bessel_j(p.k, p.gamma, p.lambda, p.mu, z * z / 2.0, ctl)?,
        Reduction::WrightW => k_wright_w(p.k, p.gamma, p.lambda, p.mu, -z * z / 2.0, ctl)?,
    };
    Ok(inner.scaled((z / 2.0).powf(p.mu)))
}

/// ω(z) through the ₁ψ₂ Fox-Wright route (ordinary gammas only).
pub fn psi_form_source(
    params: &KBesselParams,
    z: f64,
    ctl: &SeriesControl,
) -> Result<SeriesSum, KineticsError> {
    params.validate()?;
    if !(z >= 0.0) {
        return Err(KineticsError::InvalidGrid(format!(
            "source argument must be non-negative, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(SeriesSum::exact(0.0));
    }
    let KBesselParams {
        k,
        gamma,
        lambda,
        mu,
        b,
        c,
    } = *params;
    let lower_shift = mu / k + (b + 1.0) / (2.0 * k);
    let spec = FoxWrightSpec::new(
        vec![(gamma / k, 1.0)],
        vec![(lower_shift, lambda / k), (1.0, 1.0)],
    )?;
    let half = z / 2.0;
    let x = -c * k.powf(1.0 - lambda / k) * half * half;
    let psi = fox_wright(&spec, x, ctl)?;
    let log_pre = (1.0 - lower_shift) * k.ln() - log_gamma(gamma / k)? + mu * half.ln();
    Ok(psi.scaled(log_pre.exp()))
}

/// Corollary form of the solution for a reduced problem, assembled with
/// plain products of ordinary values instead of the log-space series.
pub fn corollary_solution(
    prob: &KineticProblem,
    reduction: Reduction,
    t: f64,
    ctl: &SeriesControl,
) -> Result<PointValue, KineticsError> {
    let p = prob.params();
    reduction.check(p)?;
    if !(t >= 0.0) {
        return Err(KineticsError::InvalidGrid(format!("negative time {t}")));
    }
    if t == 0.0 {
        return Ok(SeriesSum::exact(0.0));
    }
    let nu = prob.nu();
    let base = prob.source_argument(t) / 2.0;
    let ml_arg = -(prob.rate() * t).powf(nu);
    let inner_ctl = ctl.tightened(10.0);

    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut quiet = 0;
    let mut fact = 1.0;
    for n in 0..ctl.max_terms() {
        let nf = n as f64;
        if n > 0 {
            fact *= nf;
        }
        let order = p.mu + 2.0 * nf;
        let beta = match prob.variant() {
            Variant::Theorem1 => order + 1.0,
            _ => nu * order + 1.0,
        };
        let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
        let coef = sign * k_pochhammer(p.gamma, n as u32, p.k)?
            / k_gamma(p.mu + p.lambda * nf + reduction.shift(), p.k)?
            / (fact * fact);
        let ml = scaled_ml(MLParams::new(nu, beta)?, ml_arg, &inner_ctl)?;
        let term = coef * base.powf(order) * ml.value;
        sum += term;
        abs_sum += term.abs();
        if term.abs() <= ctl.rel_tol() * sum.abs() {
            quiet += 1;
            if quiet >= ctl.stagnation_window() {
                return Ok(SeriesSum {
                    value: prob.n0() * sum,
                    terms: n + 1,
                    tail: 0.0,
                    rounding: prob.n0() * abs_sum * 8.0 * f64::EPSILON,
                    max_log_term: f64::NAN,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(KineticsError::SpecFun(
        crate::specfun::SpecFunError::NonConvergence {
            terms: ctl.max_terms(),
            partial: sum,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetics::solve;
    use crate::specfun::gen_k_bessel;
    use approx::assert_relative_eq;

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn bessel_source_vanishes_at_origin() {
        let p = KBesselParams::new(2.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(
            corollary_source(&p, Reduction::BesselJ, 0.0, &ctl())
                .unwrap()
                .value,
            0.0
        );
    }

    #[test]
    fn bessel_source_matches_omega() {
        let p = KBesselParams::new(2.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let a = corollary_source(&p, Reduction::BesselJ, 1.0, &ctl())
            .unwrap()
            .value;
        let b = gen_k_bessel(&p, 1.0, &ctl()).unwrap().value;
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn wright_source_matches_omega() {
        let p = KBesselParams::new(1.0, 1.0, 1.0, 1.0, -1.0, 1.0).unwrap();
        let a = corollary_source(&p, Reduction::WrightW, 0.5, &ctl())
            .unwrap()
            .value;
        let b = gen_k_bessel(&p, 0.5, &ctl()).unwrap().value;
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn reduction_mismatch_rejected() {
        let p = KBesselParams::new(2.0, 1.0, 1.0, 1.0, 3.0, 2.0).unwrap();
        assert!(matches!(
            corollary_source(&p, Reduction::BesselJ, 1.0, &ctl()),
            Err(KineticsError::Reduction(_))
        ));
        assert!(corollary_source(&p, Reduction::WrightW, 1.0, &ctl()).is_err());
    }

    #[test]
    fn psi_form_vanishes_at_origin() {
        let p = KBesselParams::new(2.0, 1.0, 1.0, 1.0, 3.0, 2.0).unwrap();
        assert_eq!(psi_form_source(&p, 0.0, &ctl()).unwrap().value, 0.0);
    }

    #[test]
    fn psi_form_matches_omega_on_figure_parameters() {
        for lambda in [1.0, 1.25, 1.5, 1.75, 2.0] {
            let p = KBesselParams::new(2.0, 1.0, lambda, 1.0, 3.0, 2.0).unwrap();
            let a = psi_form_source(&p, 0.5, &ctl()).unwrap().value;
            let b = gen_k_bessel(&p, 0.5, &ctl()).unwrap().value;
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn psi_form_at_unit_k_matches_omega() {
        let p = KBesselParams::new(1.0, 1.7, 0.8, 2.2, 0.4, -0.6).unwrap();
        for z in [0.1, 1.0, 3.0] {
            let a = psi_form_source(&p, z, &ctl()).unwrap().value;
            let b = gen_k_bessel(&p, z, &ctl()).unwrap().value;
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn corollary_solutions_match_theorems() {
        for (red, b) in [(Reduction::BesselJ, 1.0), (Reduction::WrightW, -1.0)] {
            let params = KBesselParams::new(2.0, 1.0, 1.5, 1.0, b, 1.0).unwrap();
            for v in [Variant::Theorem1, Variant::Theorem2, Variant::Theorem3] {
                let prob = KineticProblem::new(2.0, 3.0, 1.0, 1.0, v, params).unwrap();
                for t in [0.02, 0.05, 0.5] {
                    let a = solve(&prob, t, &ctl()).unwrap().value;
                    let c = corollary_solution(&prob, red, t, &ctl()).unwrap().value;
                    assert_relative_eq!(a, c, max_relative = 1e-12);
                }
            }
        }
    }
}
