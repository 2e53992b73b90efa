use rayon::prelude::*;

use super::CliError;
use crate::kinetics::{solve_grid, uniform_grid, KineticProblem, SolutionTable, Variant};
use crate::specfun::{KBesselParams, SeriesControl};

pub const LAMBDAS: [f64; 5] = [1.0, 1.25, 1.5, 1.75, 2.0];
pub const FIGURE_POINTS: usize = 201;

/// One of the seven built-in parameter sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureSpec {
    pub id: u8,
    pub variant: Variant,
    pub t_end: f64,
    pub a: Option<f64>,
}

impl FigureSpec {
    pub fn get(id: u8) -> Option<Self> {
        let (variant, t_end, a) = match id {
            1 => (Variant::Theorem1, 1.0, None),
            2 => (Variant::Theorem1, 2.0, None),
            3 => (Variant::Theorem1, 3.0, None),
            4 => (Variant::Theorem2, 0.05, None),
            5 => (Variant::Theorem2, 0.06, None),
            6 => (Variant::Theorem3, 0.05, Some(1.0)),
            7 => (Variant::Theorem3, 0.06, Some(1.0)),
            _ => return None,
        };
        Some(Self {
            id,
            variant,
            t_end,
            a,
        })
    }

    pub fn all() -> Vec<Self> {
        (1..=7).filter_map(Self::get).collect()
    }

    /// N0 = c = k = 2, b = d = 3, mu = nu = gamma = 1.
    pub fn problem(&self, lambda: f64) -> Result<KineticProblem, CliError> {
        let params = KBesselParams::new(2.0, 1.0, lambda, 1.0, 3.0, 2.0)?;
        Ok(KineticProblem::new(
            2.0,
            3.0,
            self.a.unwrap_or(f64::NAN),
            1.0,
            self.variant,
            params,
        )?)
    }

    pub fn times(&self) -> Vec<f64> {
        uniform_grid(self.t_end, FIGURE_POINTS)
    }

    pub fn header(&self) -> Vec<String> {
        std::iter::once("t".to_string())
            .chain(LAMBDAS.iter().map(|l| format!("N_lambda_{l:.2}")))
            .collect()
    }

    pub fn title(&self) -> String {
        let mut s = format!(
            "Figure {}: theorem {}, d = 3",
            self.id,
            self.variant.number()
        );
        if let Some(a) = self.a {
            s.push_str(&format!(", a = {a}"));
        }
        s
    }

    /// Solves every lambda of the sweep concurrently.
    pub fn compute(&self, ctl: &SeriesControl) -> Result<Vec<SolutionTable>, CliError> {
        let times = self.times();
        LAMBDAS
            .par_iter()
            .map(|&l| Ok(solve_grid(&self.problem(l)?, &times, ctl)?))
            .collect()
    }

    /// First node with t > 0 and N <= 0 in each lambda series.
    pub fn positivity_violations(&self, tables: &[SolutionTable]) -> Vec<Violation> {
        tables
            .iter()
            .zip(LAMBDAS)
            .filter_map(|(table, lambda)| {
                table
                    .times
                    .iter()
                    .zip(&table.values)
                    .find(|(&t, &n)| t > 0.0 && !(n > 0.0))
                    .map(|(&t, &value)| Violation {
                        figure: self.id,
                        lambda,
                        t,
                        value,
                    })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub figure: u8,
    pub lambda: f64,
    pub t: f64,
    pub value: f64,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "figure {}: N = {} is not positive at lambda = {}, t = {}",
            self.figure, self.value, self.lambda, self.t
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_figures() {
        let all = FigureSpec::all();
        assert_eq!(all.len(), 7);
        assert!(FigureSpec::get(0).is_none() && FigureSpec::get(8).is_none());
        assert_eq!(all[5].a, Some(1.0));
        assert_eq!(all[3].variant, Variant::Theorem2);
    }

    #[test]
    fn header_names_lambdas() {
        assert_eq!(
            FigureSpec::get(1).unwrap().header().join(","),
            "t,N_lambda_1.00,N_lambda_1.25,N_lambda_1.50,N_lambda_1.75,N_lambda_2.00"
        );
    }

    #[test]
    fn figure_four_is_positive() {
        let spec = FigureSpec::get(4).unwrap();
        let tables = spec.compute(&SeriesControl::default()).unwrap();
        assert_eq!(tables.len(), 5);
        assert!(tables.iter().all(|t| t.len() == FIGURE_POINTS));
        assert!(spec.positivity_violations(&tables).is_empty());
    }

    #[test]
    fn figure_two_dips_below_zero() {
        // N(1.85) = -8.8464279527e-4 at lambda = 1 (independent quadrature)
        let spec = FigureSpec::get(2).unwrap();
        let tables = spec.compute(&SeriesControl::default()).unwrap();
        let v = spec.positivity_violations(&tables);
        assert_eq!(v.len(), 4);
        assert_eq!((v[0].lambda, v[0].t), (1.0, 1.85));
        assert!((v[0].value + 8.846_427_952_736e-4).abs() < 1e-12);
    }
}
