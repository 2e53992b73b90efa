//! Numeric Laplace transforms on `[0, ∞)` and the transformed form of the
//! kinetic equation, `Ñ(p)(1 + rateᵛ p^{-ν}) = n0 F̃(p)`.

use super::OracleError;
use crate::kinetics::KineticProblem;
use crate::specfun::SeriesControl;

/// Truncation and accuracy settings for [`laplace_transform`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceOptions {
    /// Integrate until `e^{-pt} max|g|` falls below `cutoff` times the peak
    /// of the integrand.
    pub cutoff: f64,
    /// Relative accuracy asked of each Simpson panel.
    pub rel_tol: f64,
    pub max_depth: u32,
    /// Scan limit in units of `1/p`.
    pub max_decay: f64,
}

impl Default for LaplaceOptions {
    fn default() -> Self {
        Self {
            cutoff: 1e-16,
            rel_tol: 1e-10,
            max_depth: 40,
            max_decay: 200.0,
        }
    }
}

/// `∫₀^∞ e^{-pt} g(t) dt` by adaptive Simpson on a scanned finite interval.
pub fn laplace_transform<G>(mut g: G, p: f64, opts: &LaplaceOptions) -> Result<f64, OracleError>
where
    G: FnMut(f64) -> Result<f64, OracleError>,
{
    if !(p > 0.0 && p.is_finite()) {
        return Err(OracleError::InvalidInput(format!(
            "p must be positive, got {p}"
        )));
    }
    let step = 0.5 / p;
    let mut integrand = |t: f64| -> Result<f64, OracleError> {
        let v = (-p * t).exp() * g(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(OracleError::Quadrature(format!(
                "non-finite integrand at t = {t}"
            )))
        }
    };

    // scan nodes: s_i = i * step
    let mut nodes = vec![integrand(0.0)?];
    let mut peak = nodes[0].abs();
    let mut max_g = peak;
    let mut quiet = 0;
    loop {
        let i = nodes.len();
        let t = i as f64 * step;
        if p * t > opts.max_decay {
            return Err(OracleError::Quadrature(format!(
                "integrand not negligible by t = {t}"
            )));
        }
        let v = integrand(t)?;
        nodes.push(v);
        peak = peak.max(v.abs());
        max_g = max_g.max(v.abs() * (p * t).exp());
        if (-p * t).exp() * max_g <= opts.cutoff * peak {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if peak == 0.0 {
        return Ok(0.0);
    }

    let tol = opts.rel_tol * peak * step;
    // halving stops here so endpoint singularities terminate
    let floor = tol * 2f64.powi(-20);
    let mut total = 0.0;
    for i in 0..nodes.len() - 1 {
        let (a, b) = (i as f64 * step, (i + 1) as f64 * step);
        let m = 0.5 * (a + b);
        let fm = integrand(m)?;
        let (fa, fb) = (nodes[i], nodes[i + 1]);
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson(
            &mut integrand,
            a,
            b,
            fa,
            fm,
            fb,
            whole,
            tol,
            floor,
            opts.max_depth,
        )?;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn simpson<F>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    floor: f64,
    depth: u32,
) -> Result<f64, OracleError>
where
    F: FnMut(f64) -> Result<f64, OracleError>,
{
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm)?, f(rm)?);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(OracleError::Quadrature(format!(
            "adaptive Simpson did not converge on [{a}, {b}]"
        )));
    }
    let tol = (tol / 2.0).max(floor);
    Ok(simpson(f, a, m, fa, flm, fm, left, tol, floor, depth - 1)?
        + simpson(f, m, b, fm, frm, fb, right, tol, floor, depth - 1)?)
}

/// Relative defect `|Ñ(1 + rateᵛ p^{-ν}) - n0 F̃| / |n0 F̃|`; zero when both
/// transforms vanish.
pub fn laplace_defect(n_tilde: f64, f_tilde: f64, n0: f64, rate: f64, nu: f64, p: f64) -> f64 {
    let lhs = n_tilde * (1.0 + rate.powf(nu) * p.powf(-nu));
    let rhs = n0 * f_tilde;
    if lhs == rhs {
        return 0.0;
    }
    (lhs - rhs).abs() / rhs.abs()
}

/// Transformed-equation defect for `solver`, a candidate solution of
/// `prob`. Needs `p > rate`.
pub fn laplace_check<S>(
    prob: &KineticProblem,
    solver: S,
    p: f64,
    ctl: &SeriesControl,
) -> Result<f64, OracleError>
where
    S: FnMut(f64) -> Result<f64, OracleError>,
{
    if !(p > prob.rate()) {
        return Err(OracleError::InvalidInput(format!(
            "p = {p} must exceed the rate {}",
            prob.rate()
        )));
    }
    let opts = LaplaceOptions::default();
    let n_tilde = laplace_transform(solver, p, &opts)?;
    let f_tilde = laplace_transform(|t| Ok(prob.source(t, ctl)?.value), p, &opts)?;
    Ok(laplace_defect(
        n_tilde,
        f_tilde,
        prob.n0(),
        prob.rate(),
        prob.nu(),
        p,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetics::{solve, Variant};
    use crate::specfun::KBesselParams;
    use approx::assert_relative_eq;

    #[test]
    fn zero_function_and_defect() {
        let opts = LaplaceOptions::default();
        assert_eq!(laplace_transform(|_| Ok(0.0), 3.0, &opts).unwrap(), 0.0);
        assert_eq!(laplace_defect(0.0, 0.0, 2.0, 3.0, 0.5, 4.0), 0.0);
    }

    #[test]
    fn elementary_pairs() {
        let opts = LaplaceOptions::default();
        let one = laplace_transform(|_| Ok(1.0), 4.0, &opts).unwrap();
        assert_relative_eq!(one, 0.25, max_relative = 1e-9);
        let exp = laplace_transform(|t| Ok((-3.0 * t).exp()), 4.0, &opts).unwrap();
        assert_relative_eq!(exp, 1.0 / 7.0, max_relative = 1e-9);
        let sq = laplace_transform(|t: f64| Ok(t.sqrt()), 2.0, &opts).unwrap();
        // Γ(3/2) / p^{3/2}
        assert_relative_eq!(
            sq,
            0.886_226_925_452_758 / 2f64.powf(1.5),
            max_relative = 1e-7
        );
    }

    #[test]
    fn unit_order_constant_forcing() {
        let (n0, d, p) = (2.0, 3.0, 5.0);
        let opts = LaplaceOptions::default();
        let nt = laplace_transform(|t| Ok(n0 * (-d * t).exp()), p, &opts).unwrap();
        let ft = laplace_transform(|_| Ok(1.0), p, &opts).unwrap();
        assert_relative_eq!(nt, n0 / (p + d), max_relative = 1e-9);
        assert_relative_eq!(ft, 1.0 / p, max_relative = 1e-9);
        assert!(laplace_defect(nt, ft, n0, d, 1.0, p) <= 1e-6);
    }

    #[test]
    fn series_solution_in_transform_domain() {
        let params = KBesselParams::new(2.0, 1.0, 1.0, 1.0, 3.0, 2.0).unwrap();
        let prob = KineticProblem::without_a(2.0, 3.0, 1.0, Variant::Theorem1, params).unwrap();
        let ctl = SeriesControl::default();
        let defect =
            laplace_check(&prob, |t| Ok(solve(&prob, t, &ctl)?.value), 10.0, &ctl).unwrap();
        assert!(defect <= 1e-3, "defect {defect}");
    }

    #[test]
    fn p_below_rate_rejected() {
        let params = KBesselParams::new(2.0, 1.0, 1.0, 1.0, 3.0, 2.0).unwrap();
        let prob = KineticProblem::without_a(2.0, 3.0, 1.0, Variant::Theorem1, params).unwrap();
        let ctl = SeriesControl::default();
        assert!(laplace_check(&prob, |_| Ok(0.0), 2.0, &ctl).is_err());
    }
}
