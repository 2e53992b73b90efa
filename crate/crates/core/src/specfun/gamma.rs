//! Euler gamma, the k-gamma function and the k-Pochhammer symbol.

use super::SpecFunError;

/// Largest `ln x` representable as a finite `f64`.
pub(crate) const LN_MAX: f64 = 709.782712893384;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain {
            what: "log_gamma argument",
            value: x,
        });
    }
    Ok(libm::lgamma(x))
}

/// `ln Γ_k(x) = (x/k - 1) ln k + ln Γ(x/k)`.
pub fn log_k_gamma(x: f64, k: f64) -> Result<f64, SpecFunError> {
    check_k(k)?;
    if !(x > 0.0) {
        return Err(SpecFunError::Domain {
            what: "k-gamma argument",
            value: x,
        });
    }
    Ok((x / k - 1.0) * k.ln() + log_gamma(x / k)?)
}

/// The k-gamma function `Γ_k(γ) = k^{γ/k - 1} Γ(γ/k)`.
pub fn k_gamma(gamma: f64, k: f64) -> Result<f64, SpecFunError> {
    let lg = log_k_gamma(gamma, k)?;
    if lg > LN_MAX {
        return Err(SpecFunError::Overflow { log_value: lg });
    }
    Ok(lg.exp())
}

/// The k-Pochhammer symbol `(γ)_{n,k} = γ(γ+k)...(γ+(n-1)k)`, product form.
pub fn k_pochhammer(gamma: f64, n: u32, k: f64) -> Result<f64, SpecFunError> {
    check_k(k)?;
    if !(gamma > 0.0) {
        return Err(SpecFunError::Domain {
            what: "k-Pochhammer base",
            value: gamma,
        });
    }
    let mut prod = 1.0;
    for i in 0..n {
        prod *= gamma + f64::from(i) * k;
    }
    if !prod.is_finite() {
        return Err(SpecFunError::Overflow {
            log_value: log_k_pochhammer(gamma, n, k)?,
        });
    }
    Ok(prod)
}

/// `ln (γ)_{n,k}` through the ratio form `Γ_k(γ+nk)/Γ_k(γ)`, which reduces
/// to `n ln k + ln Γ(γ/k + n) - ln Γ(γ/k)`.
pub fn log_k_pochhammer(gamma: f64, n: u32, k: f64) -> Result<f64, SpecFunError> {
    check_k(k)?;
    if !(gamma > 0.0) {
        return Err(SpecFunError::Domain {
            what: "k-Pochhammer base",
            value: gamma,
        });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let g = gamma / k;
    Ok(f64::from(n) * k.ln() + log_gamma(g + f64::from(n))? - log_gamma(g)?)
}

/// `ln n!` via the gamma function.
pub(crate) fn log_factorial(n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

fn check_k(k: f64) -> Result<(), SpecFunError> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(SpecFunError::Domain {
            what: "k parameter",
            value: k,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn log_gamma_special_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_eq!(log_gamma(2.0).unwrap(), 0.0);
        assert_relative_eq!(
            log_gamma(0.5).unwrap(),
            0.5 * std::f64::consts::PI.ln(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn log_gamma_rejects_non_positive() {
        for x in [0.0, -1.0, -0.5, f64::NAN] {
            assert!(matches!(log_gamma(x), Err(SpecFunError::Domain { .. })));
        }
    }

    // ln Γ(x) from mpmath.loggamma at 40 digits.
    const LOG_GAMMA_REF: &[(f64, f64)] = &[
        (1e-3, 6.907_178_885_383_853),
        (0.1, 2.252_712_651_734_206),
        (0.99, 5.854_806_764_709_776e-3),
        (1.01, -5.690_307_946_069_646e-3),
        (1.99, -4.195_529_088_791_665e-3),
        (2.01, 4.260_022_907_098_437e-3),
        (10.0, 12.801_827_480_081_469),
        (50.5, 146.519_255_490_720_63),
        (170.0, 701.437_263_808_737),
    ];

    #[test]
    fn log_gamma_matches_extended_precision() {
        for &(x, want) in LOG_GAMMA_REF {
            assert_relative_eq!(log_gamma(x).unwrap(), want, max_relative = 1e-14);
        }
    }

    #[test]
    fn k_gamma_examples() {
        assert_relative_eq!(k_gamma(1.0, 1.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(k_gamma(2.0, 2.0).unwrap(), 1.0, max_relative = 1e-15);
        // sqrt(2) * Γ(3/2) = sqrt(π/2)
        assert_relative_eq!(
            k_gamma(3.0, 2.0).unwrap(),
            1.253_314_137_315_500_3,
            max_relative = 1e-14
        );
    }

    #[test]
    fn k_gamma_overflow_carries_log() {
        match k_gamma(400.0, 1.0) {
            Err(SpecFunError::Overflow { log_value }) => {
                assert_relative_eq!(log_value, log_gamma(400.0).unwrap());
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn k_pochhammer_examples() {
        assert_eq!(k_pochhammer(5.0, 0, 2.0).unwrap(), 1.0);
        assert_eq!(k_pochhammer(2.0, 3, 1.0).unwrap(), 24.0);
        assert_eq!(k_pochhammer(1.0, 3, 2.0).unwrap(), 15.0);
    }

    #[test]
    fn k_pochhammer_overflow_reports_log() {
        match k_pochhammer(1.0, 400, 1.0) {
            Err(SpecFunError::Overflow { log_value }) => {
                assert_relative_eq!(log_value, log_gamma(401.0).unwrap(), max_relative = 1e-14);
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn k_pochhammer_recurrence_is_exact() {
        for &(g, k) in &[(0.3, 0.5), (1.7, 2.0), (9.1, 3.0)] {
            for n in 0..20 {
                let a = k_pochhammer(g, n, k).unwrap();
                let b = k_pochhammer(g, n + 1, k).unwrap();
                assert_eq!(b, a * (g + f64::from(n) * k));
            }
        }
    }
}
