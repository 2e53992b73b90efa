use rayon::prelude::*;

use super::{solve, KineticProblem, KineticsError};
use crate::specfun::SeriesControl;

/// Solution values on a time grid, with per-point series metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTable {
    pub problem: KineticProblem,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// Outer terms used at each point.
    pub terms: Vec<usize>,
    /// Truncation tail estimate at each point (outer plus inner series).
    pub tails: Vec<f64>,
    /// Tail plus rounding estimate at each point.
    pub error_bounds: Vec<f64>,
    /// Points whose tail estimate exceeds `rel_tol * |N|`.
    pub flagged: Vec<bool>,
}

impl SolutionTable {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn max_tail(&self) -> f64 {
        self.tails.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_error_bound(&self) -> f64 {
        self.error_bounds.iter().copied().fold(0.0, f64::max)
    }
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<(), KineticsError> {
    if let Some(&t) = grid.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
        return Err(KineticsError::InvalidGrid(format!(
            "grid times must be finite and non-negative, found {t}"
        )));
    }
    if let Some(w) = grid.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(KineticsError::InvalidGrid(format!(
            "grid must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// Evaluates the problem's solver at every grid time. Points are computed in
/// parallel and assembled by index; any failure fails the whole table.
pub fn solve_grid(
    prob: &KineticProblem,
    grid: &[f64],
    ctl: &SeriesControl,
) -> Result<SolutionTable, KineticsError> {
    check_grid(grid)?;
    let points = grid
        .par_iter()
        .map(|&t| solve(prob, t, ctl))
        .collect::<Result<Vec<_>, _>>()?;

    let mut table = SolutionTable {
        problem: *prob,
        times: grid.to_vec(),
        values: Vec::with_capacity(points.len()),
        terms: Vec::with_capacity(points.len()),
        tails: Vec::with_capacity(points.len()),
        error_bounds: Vec::with_capacity(points.len()),
        flagged: Vec::with_capacity(points.len()),
    };
    for p in points {
        table.values.push(p.value);
        table.terms.push(p.terms);
        table.tails.push(p.tail);
        table.error_bounds.push(p.error_bound());
        table.flagged.push(p.tail > ctl.rel_tol() * p.value.abs());
    }
    Ok(table)
}

/// `n_points` uniformly spaced times on `[0, t_end]`, endpoints included.
pub fn uniform_grid(t_end: f64, n_points: usize) -> Vec<f64> {
    match n_points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => {
            let h = t_end / (n_points - 1) as f64;
            (0..n_points)
                .map(|i| {
                    if i + 1 == n_points {
                        t_end
                    } else {
                        i as f64 * h
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::fig_params;
    use super::super::Variant;
    use super::*;

    fn fig1() -> KineticProblem {
        KineticProblem::without_a(2.0, 3.0, 1.0, Variant::Theorem1, fig_params(1.0)).unwrap()
    }

    #[test]
    fn empty_grid_gives_empty_table() {
        let t = solve_grid(&fig1(), &[], &SeriesControl::default()).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn single_origin_point() {
        let t = solve_grid(&fig1(), &[0.0], &SeriesControl::default()).unwrap();
        assert_eq!(t.values, vec![0.0]);
    }

    #[test]
    fn figure_one_grid_has_small_tails() {
        let grid = uniform_grid(1.0, 101);
        let t = solve_grid(&fig1(), &grid, &SeriesControl::default()).unwrap();
        assert_eq!(t.len(), 101);
        assert!(t.max_error_bound() <= 1e-12, "{}", t.max_error_bound());
        assert!(t.flagged.iter().all(|f| !f));
    }

    #[test]
    fn bad_grids_rejected() {
        let c = SeriesControl::default();
        assert!(solve_grid(&fig1(), &[0.0, 0.5, 0.5], &c).is_err());
        assert!(solve_grid(&fig1(), &[0.2, 0.1], &c).is_err());
        assert!(solve_grid(&fig1(), &[-0.1, 0.1], &c).is_err());
    }

    #[test]
    fn parallel_assembly_is_ordered_and_deterministic() {
        let grid = uniform_grid(1.0, 57);
        let c = SeriesControl::default();
        let a = solve_grid(&fig1(), &grid, &c).unwrap();
        let b = solve_grid(&fig1(), &grid, &c).unwrap();
        assert_eq!(a, b);
        for (i, &t) in grid.iter().enumerate() {
            assert_eq!(a.values[i], solve(&fig1(), t, &c).unwrap().value);
        }
    }

    #[test]
    fn uniform_grid_endpoints() {
        let g = uniform_grid(0.05, 201);
        assert_eq!(g.len(), 201);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[200], 0.05);
        assert!(uniform_grid(1.0, 0).is_empty());
    }
}
