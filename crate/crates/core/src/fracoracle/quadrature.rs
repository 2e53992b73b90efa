//! Product-trapezoidal weights for the Riemann-Liouville integral
//!
//! ```text
//! (₀D_t^{-ν} f)(t) = 1/Γ(ν) ∫₀ᵗ (t-s)^{ν-1} f(s) ds
//! ```
//!
//! on a uniform grid. The piecewise-linear interpolant of `f` is integrated
//! exactly against the kernel, giving
//!
//! ```text
//! (₀D^{-ν} f)(t_j) ≈ h^ν/Γ(ν+2) · [ e_j f_0 + Σ_{0<i<j} a_{j-i} f_i + f_j ]
//! a_m = (m+1)^{ν+1} + (m-1)^{ν+1} - 2 m^{ν+1}
//! e_j = (j-1)^{ν+1} - (j-1-ν) j^ν
//! ```
//!
//! Both `a_m` and `e_j` are differences of nearly equal large powers, so for
//! `m, j ≥ 2` they are evaluated from their binomial expansions in `1/m`
//! instead.

use super::OracleError;
use crate::specfun::{log_gamma, CompensatedSum};

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    t_end: f64,
    n_steps: usize,
    h: f64,
    nu: f64,
    scale: f64,
    /// `a_m`, indexed by `m`; entry 0 unused.
    interior: Vec<f64>,
    /// `e_j`, indexed by `j`; entry 0 unused.
    endpoint: Vec<f64>,
}

/// Generalized binomial coefficients `C(p, k)` for `k = 0, 1, ...`.
fn binomials(p: f64) -> impl Iterator<Item = f64> {
    let mut c = 1.0;
    let mut k = 0.0;
    std::iter::from_fn(move || {
        let out = c;
        k += 1.0;
        c *= (p - k + 1.0) / k;
        Some(out)
    })
}

const EXPANSION_TERMS: usize = 400;

/// `a_m = (m+1)^p + (m-1)^p - 2 m^p` with `p = ν + 1`.
fn interior_coefficient(m: usize, p: f64) -> f64 {
    if m == 1 {
        return 2f64.powf(p) - 2.0;
    }
    // 2 m^p Σ_{k≥1} C(p, 2k) m^{-2k}
    let x2 = 1.0 / (m as f64 * m as f64);
    let mut acc = CompensatedSum::default();
    let mut xp = 1.0;
    for (k, c) in binomials(p).enumerate().take(EXPANSION_TERMS).skip(1) {
        if k % 2 == 1 {
            continue;
        }
        xp *= x2;
        let term = c * xp;
        acc.add(term);
        if term.abs() <= 1e-18 * acc.value().abs() || c == 0.0 {
            break;
        }
    }
    2.0 * (m as f64).powf(p) * acc.value()
}

/// `e_j = (j-1)^p - (j-1-ν) j^ν` with `p = ν + 1`.
fn endpoint_coefficient(j: usize, nu: f64) -> f64 {
    if j == 1 {
        return nu;
    }
    // j^ν Σ_{k≥2} C(p, k) (-1)^k j^{1-k}
    let p = nu + 1.0;
    let x = 1.0 / j as f64;
    let mut acc = CompensatedSum::default();
    let mut xp = 1.0;
    for (k, c) in binomials(p).enumerate().take(EXPANSION_TERMS).skip(1) {
        xp *= -x;
        if k < 2 {
            continue;
        }
        let term = c * xp * j as f64;
        acc.add(term);
        if term.abs() <= 1e-18 * acc.value().abs() || c == 0.0 {
            break;
        }
    }
    (j as f64).powf(nu) * acc.value()
}

impl QuadratureGrid {
    pub fn new(t_end: f64, n_steps: usize, nu: f64) -> Result<Self, OracleError> {
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(OracleError::InvalidGrid(format!(
                "t_end must be positive, got {t_end}"
            )));
        }
        if n_steps == 0 {
            return Err(OracleError::InvalidGrid("n_steps must be positive".into()));
        }
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(OracleError::InvalidGrid(format!(
                "kernel order must be positive, got {nu}"
            )));
        }
        let h = t_end / n_steps as f64;
        let p = nu + 1.0;
        let scale = (nu * h.ln() - log_gamma(nu + 2.0)?).exp();
        let mut interior = vec![0.0; n_steps + 1];
        let mut endpoint = vec![0.0; n_steps + 1];
        for m in 1..=n_steps {
            interior[m] = interior_coefficient(m, p);
            endpoint[m] = endpoint_coefficient(m, nu);
        }
        let grid = Self {
            t_end,
            n_steps,
            h,
            nu,
            scale,
            interior,
            endpoint,
        };
        if let Some((j, i, w)) = grid.first_bad_weight() {
            return Err(OracleError::InvalidGrid(format!(
                "weight w[{j}][{i}] = {w} violates the kernel sign/finiteness contract"
            )));
        }
        Ok(grid)
    }

    /// Grid with step `h = t_end / n_steps` chosen so that `t_end` is hit
    /// exactly with a step no larger than `step`.
    pub fn with_step(t_end: f64, step: f64, nu: f64) -> Result<Self, OracleError> {
        if !(step > 0.0) {
            return Err(OracleError::InvalidGrid(format!(
                "step must be positive, got {step}"
            )));
        }
        let n = (t_end / step * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        Self::new(t_end, n, nu)
    }

    fn first_bad_weight(&self) -> Option<(usize, usize, f64)> {
        let check_sign = self.nu <= 1.0;
        for m in 1..=self.n_steps {
            for (w, j, i) in [(self.interior[m], m + 1, 1), (self.endpoint[m], m, 0)] {
                if !w.is_finite() || (check_sign && w < 0.0) {
                    return Some((j, i, w * self.scale));
                }
            }
        }
        None
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Node `t_j = j h`.
    pub fn time(&self, j: usize) -> f64 {
        if j == self.n_steps {
            self.t_end
        } else {
            j as f64 * self.h
        }
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.n_steps).map(|j| self.time(j)).collect()
    }

    /// Weight `w[j][i]` of sample `i` in the integral up to node `j`.
    pub fn weight(&self, j: usize, i: usize) -> f64 {
        if j == 0 || i > j {
            0.0
        } else if i == j {
            self.scale
        } else if i == 0 {
            self.scale * self.endpoint[j]
        } else {
            self.scale * self.interior[j - i]
        }
    }

    /// Row `w[j][0..=j]`.
    pub fn row(&self, j: usize) -> Vec<f64> {
        (0..=j).map(|i| self.weight(j, i)).collect()
    }

    /// `Σ_{i<j} w[j][i] f_i`, the part of the integral that excludes node `j`.
    pub(crate) fn history(&self, samples: &[f64], j: usize) -> f64 {
        if j == 0 {
            return 0.0;
        }
        let mut acc = CompensatedSum::default();
        acc.add(self.endpoint[j] * samples[0]);
        for (i, &f) in samples.iter().enumerate().take(j).skip(1) {
            acc.add(self.interior[j - i] * f);
        }
        self.scale * acc.value()
    }
}

/// Product-trapezoidal approximation of `(₀D^{-ν} f)(t_j)` from samples of
/// `f` on the grid nodes `0..=j`.
pub fn rl_integral(grid: &QuadratureGrid, samples: &[f64], j: usize) -> Result<f64, OracleError> {
    if j > grid.n_steps || samples.len() <= j {
        return Err(OracleError::GridMismatch(format!(
            "need samples up to node {j} (have {}, grid has {} steps)",
            samples.len(),
            grid.n_steps
        )));
    }
    Ok(grid.history(samples, j) + grid.weight(j, j) * samples[j])
}
