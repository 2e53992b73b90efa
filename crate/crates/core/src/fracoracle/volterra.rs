use super::{OracleError, QuadratureGrid};
use crate::kinetics::KineticProblem;
use crate::specfun::{mittag_leffler, MLParams, SeriesControl, SeriesSum};

/// Discrete solution of `N(t) = n0 f(t) - rateᵛ ₀D^{-ν} N(t)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    pub grid: QuadratureGrid,
    pub values: Vec<f64>,
    /// Forcing samples `f(t_j)` (without `n0`).
    pub source: Vec<f64>,
    pub source_label: String,
    pub n0: f64,
    pub rate: f64,
}

impl OracleSolution {
    pub fn times(&self) -> Vec<f64> {
        self.grid.times()
    }
}

/// Steps the product-trapezoidal discretization forward; the unknown at
/// node `j` enters linearly, so each step is a scalar division:
///
/// `N_j = (n0 f_j - rateᵛ Σ_{i<j} w[j][i] N_i) / (1 + rateᵛ w[j][j])`
pub fn solve_volterra<F>(
    n0: f64,
    mut source: F,
    source_label: &str,
    rate: f64,
    grid: &QuadratureGrid,
) -> Result<OracleSolution, OracleError>
where
    F: FnMut(f64) -> Result<f64, OracleError>,
{
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(OracleError::InvalidInput(format!(
            "rate must be positive, got {rate}"
        )));
    }
    let coupling = rate.powf(grid.nu());
    let forcing = (0..=grid.n_steps())
        .map(|j| source(grid.time(j)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut values = Vec::with_capacity(forcing.len());
    for (j, f) in forcing.iter().enumerate() {
        let diag = 1.0 + coupling * grid.weight(j, j);
        if !(diag > 0.0) {
            return Err(OracleError::Unstable { node: j, diag });
        }
        let history = grid.history(&values, j);
        values.push((n0 * f - coupling * history) / diag);
    }
    Ok(OracleSolution {
        grid: grid.clone(),
        values,
        source: forcing,
        source_label: source_label.to_owned(),
        n0,
        rate,
    })
}

/// Oracle for a kinetic problem: forcing `f = ω(·)` taken from the problem,
/// rate `d` or `a` by variant. The grid order must equal the problem's `nu`.
pub fn solve_problem(
    prob: &KineticProblem,
    grid: &QuadratureGrid,
    ctl: &SeriesControl,
) -> Result<OracleSolution, OracleError> {
    if grid.nu() != prob.nu() {
        return Err(OracleError::GridMismatch(format!(
            "grid order {} differs from problem order {}",
            grid.nu(),
            prob.nu()
        )));
    }
    let label = match prob.variant().number() {
        1 => "omega(t)",
        _ => "omega(d^nu t^nu)",
    };
    solve_volterra(
        prob.n0(),
        |t| Ok(prob.source(t, ctl)?.value),
        label,
        prob.rate(),
        grid,
    )
}

/// Haubold-Mathai closed form `n0 E_{ν,1}(-(c t)^ν)` of the constant-forcing
/// equation.
pub fn haubold_mathai(
    n0: f64,
    c_rate: f64,
    nu: f64,
    t: f64,
    ctl: &SeriesControl,
) -> Result<SeriesSum, OracleError> {
    if !(c_rate > 0.0) || !(t >= 0.0) {
        return Err(OracleError::InvalidInput(format!(
            "need c > 0 and t >= 0 (c = {c_rate}, t = {t})"
        )));
    }
    let ml = mittag_leffler(MLParams::new(nu, 1.0)?, -(c_rate * t).powf(nu), ctl)?;
    Ok(ml.scaled(n0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn homogeneous_equation_stays_zero() {
        let g = QuadratureGrid::new(1.0, 64, 0.5).unwrap();
        let s = solve_volterra(3.0, |_| Ok(0.0), "zero", 2.0, &g).unwrap();
        assert!(s.values.iter().all(|&v| v == 0.0));
        assert_eq!(s.values.len(), 65);
    }

    #[test]
    fn first_value_is_forcing_at_origin() {
        let g = QuadratureGrid::new(1.0, 16, 0.7).unwrap();
        let s = solve_volterra(2.5, |t| Ok(1.0 + t), "affine", 1.0, &g).unwrap();
        assert_eq!(s.values[0], 2.5);
    }

    #[test]
    fn unit_order_constant_forcing_is_exponential_decay() {
        let err = |n: usize| {
            let g = QuadratureGrid::new(1.0, n, 1.0).unwrap();
            let s = solve_volterra(2.0, |_| Ok(1.0), "one", 1.5, &g).unwrap();
            s.values
                .iter()
                .enumerate()
                .map(|(j, v)| (v - 2.0 * (-1.5 * g.time(j)).exp()).abs())
                .fold(0.0, f64::max)
        };
        let (e1, e2) = (err(64), err(128));
        assert!(e1 < 1e-3);
        assert!(e1 / e2 > 3.9, "trapezoid order lost: {}", e1 / e2);
    }

    #[test]
    fn half_order_matches_mittag_leffler() {
        let g = QuadratureGrid::new(1.0, 2048, 0.5).unwrap();
        let ctl = SeriesControl::default();
        let s = solve_volterra(1.0, |_| Ok(1.0), "one", 1.0, &g).unwrap();
        for j in (0..=2048).step_by(128) {
            let want = haubold_mathai(1.0, 1.0, 0.5, g.time(j), &ctl)
                .unwrap()
                .value;
            assert_relative_eq!(s.values[j], want, max_relative = 5e-4);
        }
    }

    #[test]
    fn haubold_mathai_examples() {
        let ctl = SeriesControl::default();
        assert_eq!(haubold_mathai(3.0, 1.0, 0.5, 0.0, &ctl).unwrap().value, 3.0);
        assert_relative_eq!(
            haubold_mathai(1.0, 1.0, 1.0, 1.0, &ctl).unwrap().value,
            0.367_879_441_171_442_3,
            max_relative = 1e-14
        );
        // E_{1/2,1}(-1) = e·erfc(1)
        assert_relative_eq!(
            haubold_mathai(2.0, 1.0, 0.5, 1.0, &ctl).unwrap().value,
            2.0 * 0.427_583_576_155_807,
            max_relative = 1e-13
        );
    }

    #[test]
    fn rejects_bad_rate() {
        let g = QuadratureGrid::new(1.0, 4, 1.0).unwrap();
        assert!(solve_volterra(1.0, |_| Ok(1.0), "", 0.0, &g).is_err());
    }
}
