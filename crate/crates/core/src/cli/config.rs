use std::path::Path;

use serde::Deserialize;

use super::CliError;
use crate::kinetics::{uniform_grid, KineticProblem, Variant};
use crate::specfun::{KBesselParams, SeriesControl};

pub const MAX_TERMS_ENV: &str = "KKINETICS_MAX_TERMS";

/// Flat JSON job description. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub theorem: u8,
    pub n0: f64,
    pub d: f64,
    #[serde(default)]
    pub a: Option<f64>,
    pub nu: f64,
    pub k: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub mu: f64,
    pub b: f64,
    pub c: f64,
    pub t_end: f64,
    pub n_points: usize,
    #[serde(default)]
    pub max_terms: Option<usize>,
    #[serde(default)]
    pub rel_tol: Option<f64>,
}

/// A config after every downstream invariant has been checked.
#[derive(Debug, Clone)]
pub struct Job {
    pub problem: KineticProblem,
    pub control: SeriesControl,
    pub t_end: f64,
    pub n_points: usize,
}

impl Job {
    pub fn times(&self) -> Vec<f64> {
        uniform_grid(self.t_end, self.n_points)
    }
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<Job, CliError> {
        let bad = |field: &str, msg: String| CliError::Config(format!("{field}: {msg}"));
        let variant = Variant::from_number(self.theorem).ok_or_else(|| {
            bad(
                "theorem",
                format!("must be 1, 2 or 3, got {}", self.theorem),
            )
        })?;
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(bad(
                "t_end",
                format!("must be positive, got {}", self.t_end),
            ));
        }
        if self.n_points == 0 {
            return Err(bad("n_points", "must be at least 1".into()));
        }
        let params = KBesselParams::new(self.k, self.gamma, self.lambda, self.mu, self.b, self.c)
            .map_err(|e| bad("k/gamma/lambda/mu/b/c", e.to_string()))?;
        let a = match (variant, self.a) {
            (Variant::Theorem3, None) => return Err(bad("a", "required for theorem 3".into())),
            (_, a) => a.unwrap_or(f64::NAN),
        };
        let problem = KineticProblem::new(self.n0, self.d, a, self.nu, variant, params)
            .map_err(|e| bad("n0/d/a/nu", e.to_string()))?;

        let defaults = SeriesControl::default();
        let max_terms = match self.max_terms {
            Some(m) => m,
            None => max_terms_from_env()?.unwrap_or(defaults.max_terms()),
        };
        let rel_tol = self.rel_tol.unwrap_or(defaults.rel_tol());
        let control = SeriesControl::new(max_terms, rel_tol, defaults.stagnation_window())
            .map_err(|e| bad("max_terms/rel_tol", e.to_string()))?;
        Ok(Job {
            problem,
            control,
            t_end: self.t_end,
            n_points: self.n_points,
        })
    }
}

pub fn max_terms_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(MAX_TERMS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&m| m > 0)
            .map(Some)
            .ok_or_else(|| {
                CliError::Config(format!(
                    "{MAX_TERMS_ENV}: expected a positive integer, got {v:?}"
                ))
            }),
        Err(_) => Ok(None),
    }
}

/// Default series control with the environment override applied.
pub fn control_from_env() -> Result<SeriesControl, CliError> {
    let d = SeriesControl::default();
    Ok(match max_terms_from_env()? {
        Some(m) => d.with_max_terms(m),
        None => d,
    })
}
