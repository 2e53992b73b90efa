use super::{OracleError, QuadratureGrid};
use crate::kinetics::{KineticProblem, SolutionTable};
use crate::specfun::SeriesControl;

/// Normalized defect of candidate values in the discretized equation:
///
/// `max_j |N_j - n0 f_j + rateᵛ I_j[N]| / max(1, max_j |N_j|)`
///
/// where `I_j` is the product-trapezoidal RL integral on `grid`.
pub fn residual_values(
    n0: f64,
    forcing: &[f64],
    values: &[f64],
    rate: f64,
    grid: &QuadratureGrid,
) -> Result<f64, OracleError> {
    let n = grid.n_steps() + 1;
    if values.len() != n || forcing.len() != n {
        return Err(OracleError::GridMismatch(format!(
            "expected {n} samples, got {} values and {} forcing samples",
            values.len(),
            forcing.len()
        )));
    }
    let coupling = rate.powf(grid.nu());
    let mut worst = 0.0f64;
    let mut scale = 1.0f64;
    for j in 0..n {
        let integral = grid.history(values, j) + grid.weight(j, j) * values[j];
        let defect = values[j] - n0 * forcing[j] + coupling * integral;
        worst = worst.max(defect.abs());
        scale = scale.max(values[j].abs());
    }
    Ok(worst / scale)
}

/// Residual of a series solution table in its own defining equation. The
/// table times must coincide with the grid nodes.
pub fn residual(
    prob: &KineticProblem,
    table: &SolutionTable,
    grid: &QuadratureGrid,
    ctl: &SeriesControl,
) -> Result<f64, OracleError> {
    if grid.nu() != prob.nu() {
        return Err(OracleError::GridMismatch(format!(
            "grid order {} differs from problem order {}",
            grid.nu(),
            prob.nu()
        )));
    }
    if table.len() != grid.n_steps() + 1 {
        return Err(OracleError::GridMismatch(format!(
            "table has {} points, grid has {} nodes",
            table.len(),
            grid.n_steps() + 1
        )));
    }
    let tol = 1e-12 * grid.t_end();
    if let Some((j, t)) = table
        .times
        .iter()
        .enumerate()
        .find(|(j, t)| (**t - grid.time(*j)).abs() > tol)
    {
        return Err(OracleError::GridMismatch(format!(
            "table time {t} at index {j} is not grid node {}",
            grid.time(j)
        )));
    }
    let forcing = grid
        .times()
        .iter()
        .map(|&t| Ok(prob.source(t, ctl)?.value))
        .collect::<Result<Vec<_>, OracleError>>()?;
    residual_values(prob.n0(), &forcing, &table.values, prob.rate(), grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracoracle::{solve_problem, solve_volterra};
    use crate::kinetics::{solve_grid, Variant};
    use crate::specfun::KBesselParams;

    fn fig1(lambda: f64) -> KineticProblem {
        let p = KBesselParams::new(2.0, 1.0, lambda, 1.0, 3.0, 2.0).unwrap();
        KineticProblem::without_a(2.0, 3.0, 1.0, Variant::Theorem1, p).unwrap()
    }

    #[test]
    fn discrete_solution_has_tiny_residual() {
        let g = QuadratureGrid::new(2.0, 400, 0.6).unwrap();
        let f = |t: f64| (1.0 + t).sqrt();
        let s = solve_volterra(10.0, |t| Ok(f(t)), "sqrt", 1.3, &g).unwrap();
        let r = residual_values(10.0, &s.source, &s.values, 1.3, &g).unwrap();
        assert!(r <= 1e-13, "residual {r}");
    }

    #[test]
    fn single_node_perturbation_is_detected() {
        let g = QuadratureGrid::new(1.0, 256, 0.5).unwrap();
        let s = solve_volterra(10.0, |_| Ok(1.0), "one", 1.0, &g).unwrap();
        let (jmax, _) = s.values.iter().enumerate().fold((0, 0.0), |acc, (j, v)| {
            if v.abs() > acc.1 {
                (j, v.abs())
            } else {
                acc
            }
        });
        let mut bad = s.values.clone();
        bad[jmax] *= 1.01;
        let r = residual_values(10.0, &s.source, &bad, 1.0, &g).unwrap();
        assert!(r >= 5e-3, "residual {r}");
    }

    #[test]
    fn series_solution_satisfies_equation() {
        let prob = fig1(1.0);
        let ctl = SeriesControl::default();
        let g = QuadratureGrid::new(1.0, 256, 1.0).unwrap();
        let table = solve_grid(&prob, &g.times(), &ctl).unwrap();
        let r = residual(&prob, &table, &g, &ctl).unwrap();
        assert!(r <= 5e-4, "residual {r}");
        let oracle = solve_problem(&prob, &g, &ctl).unwrap();
        let r2 = residual_values(2.0, &oracle.source, &oracle.values, 3.0, &g).unwrap();
        assert!(r2 <= 1e-13);
    }

    #[test]
    fn misaligned_table_rejected() {
        let prob = fig1(1.0);
        let ctl = SeriesControl::default();
        let g = QuadratureGrid::new(1.0, 8, 1.0).unwrap();
        let table = solve_grid(
            &prob,
            &QuadratureGrid::new(1.0, 9, 1.0).unwrap().times(),
            &ctl,
        )
        .unwrap();
        assert!(matches!(
            residual(&prob, &table, &g, &ctl),
            Err(OracleError::GridMismatch(_))
        ));
        let g2 = QuadratureGrid::new(1.1, 8, 1.0).unwrap();
        let t2 = solve_grid(&prob, &g.times(), &ctl).unwrap();
        assert!(residual(&prob, &t2, &g2, &ctl).is_err());
    }
}
