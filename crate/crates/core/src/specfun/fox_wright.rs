//! Fox-Wright function
//! `ₚψ_q(z) = Σ_{n≥0} Π_i Γ(a_i + α_i n) / Π_j Γ(b_j + β_j n) · zⁿ / n!`.

use super::gamma::{log_factorial, log_gamma};
use super::series::{sum_series, Blowup, SeriesControl, SeriesSum, Term};
use super::SpecFunError;

#[derive(Debug, Clone, PartialEq)]
pub struct FoxWrightSpec {
    upper: Vec<(f64, f64)>,
    lower: Vec<(f64, f64)>,
    /// Radius of convergence when `Σβ_j - Σα_i = -1`; `None` for entire
    /// series.
    radius: Option<f64>,
}

impl FoxWrightSpec {
    /// Rejects specs with `Σβ_j - Σα_i ≤ -1`.
    pub fn new(upper: Vec<(f64, f64)>, lower: Vec<(f64, f64)>) -> Result<Self, SpecFunError> {
        let margin = check_finite(&upper, &lower)?;
        if !(margin > -1.0) {
            return Err(SpecFunError::RejectedSpec { margin });
        }
        Ok(Self {
            upper,
            lower,
            radius: None,
        })
    }

    /// Also accepts the boundary case `Σβ_j - Σα_i = -1`, where the series
    /// converges for `|z| < ρ = Π|α_i|^{-α_i} Π|β_j|^{β_j}`; evaluation
    /// outside that disc is a domain error.
    pub fn with_boundary(
        upper: Vec<(f64, f64)>,
        lower: Vec<(f64, f64)>,
    ) -> Result<Self, SpecFunError> {
        let margin = check_finite(&upper, &lower)?;
        if margin > -1.0 {
            return Self::new(upper, lower);
        }
        if (margin + 1.0).abs() > 1e-12 {
            return Err(SpecFunError::RejectedSpec { margin });
        }
        let pow = |x: f64| if x == 0.0 { 0.0 } else { x * x.abs().ln() };
        let log_rho = lower.iter().map(|p| pow(p.1)).sum::<f64>()
            - upper.iter().map(|p| pow(p.1)).sum::<f64>();
        Ok(Self {
            upper,
            lower,
            radius: Some(log_rho.exp()),
        })
    }

    pub fn radius(&self) -> Option<f64> {
        self.radius
    }

    pub fn upper(&self) -> &[(f64, f64)] {
        &self.upper
    }

    pub fn lower(&self) -> &[(f64, f64)] {
        &self.lower
    }
}

/// Returns `Σβ_j - Σα_i`.
fn check_finite(upper: &[(f64, f64)], lower: &[(f64, f64)]) -> Result<f64, SpecFunError> {
    if upper
        .iter()
        .chain(lower.iter())
        .any(|&(a, s)| !a.is_finite() || !s.is_finite())
    {
        return Err(SpecFunError::InvalidParameter(
            "Fox-Wright parameters must be finite".into(),
        ));
    }
    Ok(lower.iter().map(|p| p.1).sum::<f64>() - upper.iter().map(|p| p.1).sum::<f64>())
}

pub fn fox_wright(
    spec: &FoxWrightSpec,
    z: f64,
    ctl: &SeriesControl,
) -> Result<SeriesSum, SpecFunError> {
    if !z.is_finite() {
        return Err(SpecFunError::Domain {
            what: "Fox-Wright argument",
            value: z,
        });
    }
    if let Some(rho) = spec.radius {
        if !(z.abs() < rho) {
            return Err(SpecFunError::Domain {
                what: "Fox-Wright argument outside the disc of convergence",
                value: z,
            });
        }
    }
    let ln_z = z.abs().ln();
    let blowup = if z < 0.0 {
        Blowup::Cancellation
    } else {
        Blowup::Overflow
    };
    let gamma_at = |a: f64, s: f64, n: usize| -> Result<f64, SpecFunError> {
        let arg = a + s * n as f64;
        if !(arg > 0.0) {
            return Err(SpecFunError::Pole { index: n, arg });
        }
        log_gamma(arg)
    };
    sum_series(ctl, blowup, |n| {
        let mut log_mag = 0.0;
        let mut scale = 0.0;
        for &(a, s) in &spec.upper {
            let g = gamma_at(a, s, n)?;
            log_mag += g;
            scale += g.abs();
        }
        for &(b, s) in &spec.lower {
            let g = gamma_at(b, s, n)?;
            log_mag -= g;
            scale += g.abs();
        }
        if n == 0 {
            return Ok(Term::new(1.0, log_mag, scale));
        }
        if z == 0.0 {
            return Ok(Term::ZERO);
        }
        let nf = n as f64;
        let fact = log_factorial(n);
        let sign = if z < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        Ok(Term::new(
            sign,
            log_mag + nf * ln_z - fact,
            scale + (nf * ln_z).abs() + fact,
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unit_psi_is_exponential() {
        let spec = FoxWrightSpec::new(vec![(1.0, 1.0)], vec![(1.0, 1.0)]).unwrap();
        let s = fox_wright(&spec, 1.0, &SeriesControl::default()).unwrap();
        assert_relative_eq!(s.value, std::f64::consts::E, max_relative = 1e-15);
    }

    #[test]
    fn convergence_gate_boundary_is_rejected() {
        // Σβ - Σα = 0 - 1 = -1
        let r = FoxWrightSpec::new(vec![(1.0, 1.0)], vec![]);
        assert!(matches!(r, Err(SpecFunError::RejectedSpec { margin }) if margin == -1.0));
        assert!(FoxWrightSpec::new(vec![(1.0, 1.0)], vec![(1.0, 0.1)]).is_ok());
    }

    #[test]
    fn boundary_spec_converges_inside_unit_disc() {
        // ₂ψ₁[(1,1),(1,1);(1,1)|z] = Σ n! zⁿ / n! = 1/(1-z)
        let spec =
            FoxWrightSpec::with_boundary(vec![(1.0, 1.0), (1.0, 1.0)], vec![(1.0, 1.0)]).unwrap();
        assert_eq!(spec.radius(), Some(1.0));
        let ctl = SeriesControl::default();
        let s = fox_wright(&spec, 0.25, &ctl).unwrap();
        assert_relative_eq!(s.value, 4.0 / 3.0, max_relative = 1e-14);
        assert!(fox_wright(&spec, 1.0, &ctl).is_err());
        assert!(FoxWrightSpec::with_boundary(vec![(1.0, 2.0)], vec![]).is_err());
        assert!(
            FoxWrightSpec::with_boundary(vec![(1.0, 1.0)], vec![(1.0, 1.0)])
                .unwrap()
                .radius()
                .is_none()
        );
    }

    #[test]
    fn pole_inside_horizon_names_index() {
        // lower argument 2.5 - n hits 0.5, then -0.5 at n = 3
        let spec = FoxWrightSpec::new(vec![(1.0, 1.0)], vec![(2.5, -1.0), (1.0, 2.0)]).unwrap();
        let r = fox_wright(&spec, 0.5, &SeriesControl::default());
        assert!(
            matches!(r, Err(SpecFunError::Pole { index: 3, .. })),
            "{r:?}"
        );
    }

    #[test]
    fn zero_argument_keeps_only_leading_ratio() {
        let spec = FoxWrightSpec::new(vec![(2.0, 1.0)], vec![(4.0, 1.0)]).unwrap();
        let s = fox_wright(&spec, 0.0, &SeriesControl::default()).unwrap();
        // Γ(2)/Γ(4)
        assert_relative_eq!(s.value, 1.0 / 6.0, max_relative = 1e-15);
    }
}
