//! Closed-form series solutions of the fractional kinetic equations
//!
//! ```text
//! (1)  N(t) - N₀ ω(t)       = -dᵛ ₀D_t^{-ν} N(t)
//! (2)  N(t) - N₀ ω(dᵛtᵛ)    = -dᵛ ₀D_t^{-ν} N(t)
//! (3)  N(t) - N₀ ω(dᵛtᵛ)    = -aᵛ ₀D_t^{-ν} N(t),   a ≠ d
//! ```
//!
//! where ω is the generalized k-Bessel function with order `mu`. Each
//! solution is an outer series over the terms of ω, every term carrying a
//! factor `Γ(β)·E_{ν,β}(-rateᵛtᵛ)`. That product is always evaluated through
//! [`scaled_ml`], since `Γ(β)` alone overflows once `β` passes ~170.

mod corollary;
mod grid;

pub use corollary::{corollary_solution, corollary_source, psi_form_source, Reduction};
pub use grid::{solve_grid, uniform_grid, SolutionTable};

use crate::specfun::{
    gen_k_bessel, log_factorial, log_k_gamma, log_k_pochhammer, scaled_ml, sum_series, Blowup,
    KBesselParams, MLParams, SeriesControl, SeriesSum, SpecFunError, Term,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KineticsError {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("invalid kinetic problem: {0}")]
    InvalidProblem(String),
    #[error("solver for {expected:?} called with a {got:?} problem")]
    WrongVariant { expected: Variant, got: Variant },
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
    #[error("reduction precondition failed: {0}")]
    Reduction(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Theorem1,
    Theorem2,
    Theorem3,
}

impl Variant {
    pub fn number(self) -> u8 {
        match self {
            Variant::Theorem1 => 1,
            Variant::Theorem2 => 2,
            Variant::Theorem3 => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Variant::Theorem1),
            2 => Some(Variant::Theorem2),
            3 => Some(Variant::Theorem3),
            _ => None,
        }
    }
}

/// One kinetic equation instance.
///
/// `mu` (inside `params`) is the order of ω; `nu` is the order of the
/// fractional integral. `a` only matters for [`Variant::Theorem3`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KineticProblem {
    n0: f64,
    d: f64,
    a: Option<f64>,
    nu: f64,
    variant: Variant,
    params: KBesselParams,
}

impl KineticProblem {
    pub fn new(
        n0: f64,
        d: f64,
        a: f64,
        nu: f64,
        variant: Variant,
        params: KBesselParams,
    ) -> Result<Self, KineticsError> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(KineticsError::InvalidProblem(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        positive("n0", n0)?;
        positive("d", d)?;
        positive("nu", nu)?;
        if variant == Variant::Theorem3 {
            positive("a", a)?;
            if (a - d).abs() == 0.0 {
                return Err(KineticsError::InvalidProblem(format!(
                    "theorem 3 requires a != d (both are {a})"
                )));
            }
        }
        params.validate()?;
        Ok(Self {
            n0,
            d,
            a: (variant == Variant::Theorem3 || a.is_finite()).then_some(a),
            nu,
            variant,
            params,
        })
    }

    /// Convenience constructor for variants 1 and 2, where `a` is unused.
    pub fn without_a(
        n0: f64,
        d: f64,
        nu: f64,
        variant: Variant,
        params: KBesselParams,
    ) -> Result<Self, KineticsError> {
        Self::new(n0, d, f64::NAN, nu, variant, params)
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    /// `a`, when one was supplied.
    pub fn a(&self) -> Option<f64> {
        self.a
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }
    pub fn variant(&self) -> Variant {
        self.variant
    }
    pub fn params(&self) -> &KBesselParams {
        &self.params
    }

    /// Same problem with a different initial density.
    pub fn with_n0(&self, n0: f64) -> Result<Self, KineticsError> {
        Self::new(
            n0,
            self.d,
            self.a.unwrap_or(f64::NAN),
            self.nu,
            self.variant,
            self.params,
        )
    }

    /// Rate constant multiplying the fractional integral: `d` for
    /// variants 1-2, `a` for variant 3.
    pub fn rate(&self) -> f64 {
        match self.variant {
            Variant::Theorem3 => self.a.unwrap_or(self.d),
            _ => self.d,
        }
    }

    /// Argument handed to ω in the forcing term.
    pub fn source_argument(&self, t: f64) -> f64 {
        match self.variant {
            Variant::Theorem1 => t,
            _ => (self.d * t).powf(self.nu),
        }
    }

    /// Forcing function `f(t)` (without the `N₀` factor).
    pub fn source(&self, t: f64, ctl: &SeriesControl) -> Result<SeriesSum, KineticsError> {
        Ok(gen_k_bessel(&self.params, self.source_argument(t), ctl)?)
    }
}

/// A solution value with its series bookkeeping.
pub type PointValue = SeriesSum;

/// Outer series shared by the three solvers.
///
/// `power_log(n)` is the log of the `n`-th power factor, `beta(n)` the second
/// Mittag-Leffler index, and `ml_arg` the (negative) Mittag-Leffler argument.
fn solution_series(
    prob: &KineticProblem,
    ctl: &SeriesControl,
    power_log: impl Fn(f64) -> f64,
    beta: impl Fn(f64) -> f64,
    ml_arg: f64,
) -> Result<PointValue, KineticsError> {
    let p = &prob.params;
    let inner_ctl = ctl.tightened(10.0);
    let ln_c = p.c.abs().ln();
    let step_sign = -p.c.signum();
    let mut inner_tail = 0.0;
    let mut inner_rounding = 0.0;

    let outer = sum_series(ctl, Blowup::Cancellation, |n| {
        if n > 0 && p.c == 0.0 {
            return Ok(Term::ZERO);
        }
        let nf = n as f64;
        let arg = p.mu + p.lambda * nf + (p.b + 1.0) / 2.0;
        if !(arg > 0.0) {
            return Err(SpecFunError::Pole { index: n, arg });
        }
        let poch = log_k_pochhammer(p.gamma, n as u32, p.k)?;
        let kg = log_k_gamma(arg, p.k)?;
        let fact = 2.0 * log_factorial(n);
        let cpow = if n == 0 { 0.0 } else { nf * ln_c };
        let pow = power_log(nf);
        let ml = scaled_ml(MLParams::new(prob.nu, beta(nf))?, ml_arg, &inner_ctl)?;
        if ml.value == 0.0 {
            return Ok(Term::ZERO);
        }
        let log_coef = cpow + poch - kg - fact + pow;
        let coef = log_coef.exp();
        inner_tail += coef * ml.tail;
        inner_rounding += coef * ml.rounding;
        let sign = if n % 2 == 1 { step_sign } else { 1.0 } * ml.value.signum();
        Ok(Term::new(
            sign,
            log_coef + ml.value.abs().ln(),
            cpow.abs() + poch.abs() + kg.abs() + fact + pow.abs(),
        ))
    })?;

    let mut s = outer;
    s.tail += inner_tail;
    s.rounding += inner_rounding;
    Ok(s.scaled(prob.n0))
}

fn expect_variant(prob: &KineticProblem, expected: Variant) -> Result<(), KineticsError> {
    if prob.variant == expected {
        Ok(())
    } else {
        Err(KineticsError::WrongVariant {
            expected,
            got: prob.variant,
        })
    }
}

fn check_time(t: f64) -> Result<(), KineticsError> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(KineticsError::InvalidGrid(format!(
            "time must be finite and non-negative, got {t}"
        )))
    }
}

/// Solution of equation (1):
/// `N₀ Σ coefₙ (t/2)^{μ+2n} Γ(μ+2n+1) E_{ν,μ+2n+1}(-dᵛtᵛ)`.
pub fn solve_theorem1(
    prob: &KineticProblem,
    t: f64,
    ctl: &SeriesControl,
) -> Result<PointValue, KineticsError> {
    expect_variant(prob, Variant::Theorem1)?;
    check_time(t)?;
    if t == 0.0 {
        return Ok(SeriesSum::exact(0.0));
    }
    let mu = prob.params.mu;
    let ln_half_t = (t / 2.0).ln();
    let ml_arg = -(prob.d * t).powf(prob.nu);
    solution_series(
        prob,
        ctl,
        |n| (mu + 2.0 * n) * ln_half_t,
        |n| mu + 2.0 * n + 1.0,
        ml_arg,
    )
}

/// Variants 2 and 3 share everything except the Mittag-Leffler rate.
fn theorem23(
    prob: &KineticProblem,
    t: f64,
    ml_rate: f64,
    ctl: &SeriesControl,
) -> Result<PointValue, KineticsError> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(SeriesSum::exact(0.0));
    }
    let mu = prob.params.mu;
    let nu = prob.nu;
    let ln_half_x = nu * (prob.d * t).ln() - std::f64::consts::LN_2;
    let ml_arg = -(ml_rate * t).powf(nu);
    solution_series(
        prob,
        ctl,
        |n| (mu + 2.0 * n) * ln_half_x,
        |n| nu * (mu + 2.0 * n) + 1.0,
        ml_arg,
    )
}

/// Solution of equation (2):
/// `N₀ Σ coefₙ (dᵛtᵛ/2)^{μ+2n} Γ(ν(μ+2n)+1) E_{ν,ν(μ+2n)+1}(-dᵛtᵛ)`.
pub fn solve_theorem2(
    prob: &KineticProblem,
    t: f64,
    ctl: &SeriesControl,
) -> Result<PointValue, KineticsError> {
    expect_variant(prob, Variant::Theorem2)?;
    theorem23(prob, t, prob.d, ctl)
}

/// Solution of equation (3): as equation (2) but the Mittag-Leffler
/// argument is `-aᵛtᵛ`.
pub fn solve_theorem3(
    prob: &KineticProblem,
    t: f64,
    ctl: &SeriesControl,
) -> Result<PointValue, KineticsError> {
    expect_variant(prob, Variant::Theorem3)?;
    theorem23(prob, t, prob.rate(), ctl)
}

/// Evaluates the equation-(3) formula with `a` set equal to `d` for a
/// [`Variant::Theorem2`] problem. [`KineticProblem::new`] refuses `a = d` for
/// variant 3, so this is the only way to reach that case.
pub fn solve_theorem3_equal_rates(
    prob: &KineticProblem,
    t: f64,
    ctl: &SeriesControl,
) -> Result<PointValue, KineticsError> {
    expect_variant(prob, Variant::Theorem2)?;
    let a = prob.d;
    theorem23(prob, t, a, ctl)
}

/// Dispatches on the problem variant.
pub fn solve(
    prob: &KineticProblem,
    t: f64,
    ctl: &SeriesControl,
) -> Result<PointValue, KineticsError> {
    match prob.variant {
        Variant::Theorem1 => solve_theorem1(prob, t, ctl),
        Variant::Theorem2 => solve_theorem2(prob, t, ctl),
        Variant::Theorem3 => solve_theorem3(prob, t, ctl),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(super) fn fig_params(lambda: f64) -> KBesselParams {
        KBesselParams::new(2.0, 1.0, lambda, 1.0, 3.0, 2.0).unwrap()
    }

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn theorem3_rejects_equal_rates() {
        let r = KineticProblem::new(2.0, 3.0, 3.0, 1.0, Variant::Theorem3, fig_params(1.0));
        assert!(matches!(r, Err(KineticsError::InvalidProblem(_))));
        assert!(
            KineticProblem::new(2.0, 3.0, 1.0, 1.0, Variant::Theorem3, fig_params(1.0)).is_ok()
        );
    }

    #[test]
    fn theorem12_ignore_a() {
        assert!(
            KineticProblem::without_a(2.0, 3.0, 1.0, Variant::Theorem1, fig_params(1.0)).is_ok()
        );
        assert!(
            KineticProblem::without_a(2.0, 3.0, 1.0, Variant::Theorem3, fig_params(1.0)).is_err()
        );
    }

    #[test]
    fn invalid_rates_rejected() {
        for (n0, d, nu) in [
            (0.0, 1.0, 1.0),
            (1.0, 0.0, 1.0),
            (1.0, 1.0, -0.5),
            (f64::NAN, 1.0, 1.0),
        ] {
            assert!(
                KineticProblem::without_a(n0, d, nu, Variant::Theorem1, fig_params(1.0)).is_err()
            );
        }
    }

    #[test]
    fn solutions_vanish_at_origin() {
        for v in [Variant::Theorem1, Variant::Theorem2, Variant::Theorem3] {
            let p = KineticProblem::new(2.0, 3.0, 1.0, 1.0, v, fig_params(1.5)).unwrap();
            assert_eq!(solve(&p, 0.0, &ctl()).unwrap().value, 0.0);
        }
    }

    #[test]
    fn wrong_variant_is_an_error() {
        let p =
            KineticProblem::without_a(2.0, 3.0, 1.0, Variant::Theorem1, fig_params(1.0)).unwrap();
        assert!(matches!(
            solve_theorem2(&p, 0.1, &ctl()),
            Err(KineticsError::WrongVariant { .. })
        ));
        assert!(solve_theorem3_equal_rates(&p, 0.1, &ctl()).is_err());
    }

    #[test]
    fn negative_time_rejected() {
        let p =
            KineticProblem::without_a(2.0, 3.0, 1.0, Variant::Theorem1, fig_params(1.0)).unwrap();
        assert!(solve(&p, -0.1, &ctl()).is_err());
    }

    #[test]
    fn homogeneous_in_initial_density() {
        for v in [Variant::Theorem1, Variant::Theorem2, Variant::Theorem3] {
            let p = KineticProblem::new(1.0, 3.0, 1.0, 1.0, v, fig_params(1.25)).unwrap();
            let q = p.with_n0(8.0).unwrap();
            for t in [0.01, 0.04, 0.3] {
                let a = solve(&p, t, &ctl()).unwrap().value;
                let b = solve(&q, t, &ctl()).unwrap().value;
                assert_eq!(b, 8.0 * a);
            }
        }
    }

    #[test]
    fn equal_rate_harness_matches_theorem2_bitwise() {
        let p =
            KineticProblem::without_a(2.0, 3.0, 1.0, Variant::Theorem2, fig_params(1.0)).unwrap();
        let a = solve_theorem2(&p, 0.04, &ctl()).unwrap();
        let b = solve_theorem3_equal_rates(&p, 0.04, &ctl()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn theorem3_differs_from_theorem2_when_rates_differ() {
        let p2 =
            KineticProblem::without_a(2.0, 3.0, 1.0, Variant::Theorem2, fig_params(1.0)).unwrap();
        let p3 =
            KineticProblem::new(2.0, 3.0, 1.0, 1.0, Variant::Theorem3, fig_params(1.0)).unwrap();
        let a = solve(&p2, 0.05, &ctl()).unwrap().value;
        let b = solve(&p3, 0.05, &ctl()).unwrap().value;
        // slower decay with the smaller rate a = 1
        assert!(b > a);
    }
}
