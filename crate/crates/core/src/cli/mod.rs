//! `kkinetics` command-line front end.
//!
//! Exit codes: 0 success, 1 computation or verification failure, 2 usage or
//! configuration error.

mod config;
mod figures;
mod output;

pub use config::{control_from_env, Job, JobConfig, MAX_TERMS_ENV};
pub use figures::{FigureSpec, Violation, FIGURE_POINTS, LAMBDAS};
pub use output::{csv_table, fmt_num, svg_chart, write_atomic, Series};

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::fracoracle::{self, OracleError, QuadratureGrid};
use crate::kinetics::{self, KineticsError};
use crate::specfun::{
    self, FoxWrightSpec, KBesselParams, MLParams, SeriesControl, SeriesSum, SpecFunError,
};

/// Pass threshold for both `verify` metrics.
pub const VERIFY_THRESHOLD: f64 = 1e-3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Kinetics(#[from] KineticsError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("positivity check failed\n{}", join_lines(.0))]
    Positivity(Vec<Violation>),
    #[error("verification failed: {metric} = {value:e} exceeds {threshold:e}")]
    Verification {
        metric: &'static str,
        value: f64,
        threshold: f64,
    },
}

fn join_lines(v: &[Violation]) -> String {
    v.iter()
        .map(|x| format!("  {x}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "kkinetics",
    version,
    about = "Fractional kinetic equations with k-Bessel sources"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a single special-function value.
    Eval {
        #[command(subcommand)]
        function: EvalFn,
    },
    /// Solve a configured problem on its grid and write a CSV (and SVG).
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check the series solution against the Volterra oracle.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Oracle step; defaults to the config grid spacing.
        #[arg(long)]
        grid_step: Option<f64>,
    },
    /// Write the built-in figure sweeps as CSV and SVG.
    Figures {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        fig: Option<u8>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Args)]
struct SeriesFlags {
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long)]
    rel_tol: Option<f64>,
}

impl SeriesFlags {
    fn control(&self) -> Result<SeriesControl, CliError> {
        let base = control_from_env()?;
        SeriesControl::new(
            self.max_terms.unwrap_or(base.max_terms()),
            self.rel_tol.unwrap_or(base.rel_tol()),
            base.stagnation_window(),
        )
        .map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
enum EvalFn {
    /// Mittag-Leffler E_{alpha,beta}(x)
    Ml {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[command(flatten)]
        series: SeriesFlags,
    },
    /// Generalized k-Bessel function at z >= 0
    Omega {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        z: f64,
        #[command(flatten)]
        series: SeriesFlags,
    },
    /// k-gamma function
    Kgamma {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        k: f64,
    },
    /// k-Pochhammer symbol (gamma)_{n,k}
    Kpoch {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: f64,
    },
    /// Fox-Wright function; pairs given as `a:alpha`, comma separated
    Foxwright {
        #[arg(long, allow_hyphen_values = true)]
        upper: String,
        #[arg(long, allow_hyphen_values = true)]
        lower: String,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        /// Accept sum(beta) - sum(alpha) = -1 (finite radius of convergence)
        #[arg(long)]
        boundary: bool,
        #[command(flatten)]
        series: SeriesFlags,
    },
    /// Constant-forcing solution n0 E_{nu,1}(-(c t)^nu)
    HmBaseline {
        #[arg(long)]
        n0: f64,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        series: SeriesFlags,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match dispatch(cli.command) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::Eval { function } => eval(function),
        Command::Solve { config, out, svg } => {
            let job = JobConfig::load(&config)?.validate()?;
            solve(&job, &out, svg.as_deref())
        }
        Command::Verify { config, grid_step } => {
            let job = JobConfig::load(&config)?.validate()?;
            verify(&job, grid_step)
        }
        Command::Figures { fig, all, out_dir } => {
            let specs = if all {
                FigureSpec::all()
            } else {
                let id = fig.unwrap_or_default();
                vec![FigureSpec::get(id)
                    .ok_or_else(|| CliError::Usage(format!("no figure {id}; expected 1-7")))?]
            };
            figures(&specs, &out_dir)
        }
    }
}

fn report(s: &SeriesSum) -> String {
    format!(
        "value = {}\nterms = {}\ntail = {:e}\n",
        fmt_num(s.value),
        s.terms,
        s.tail
    )
}

fn parse_pairs(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("expected `a:alpha`, got {pair:?}")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("not a number: {s:?}")))
            };
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

fn eval(f: EvalFn) -> Result<String, CliError> {
    let sum = match f {
        EvalFn::Ml {
            alpha,
            beta,
            x,
            series,
        } => specfun::mittag_leffler(MLParams::new(alpha, beta)?, x, &series.control()?)?,
        EvalFn::Omega {
            k,
            gamma,
            lambda,
            mu,
            b,
            c,
            z,
            series,
        } => {
            let p = KBesselParams::new(k, gamma, lambda, mu, b, c)?;
            specfun::gen_k_bessel(&p, z, &series.control()?)?
        }
        EvalFn::Kgamma { gamma, k } => SeriesSum::exact(specfun::k_gamma(gamma, k)?),
        EvalFn::Kpoch { gamma, n, k } => SeriesSum::exact(specfun::k_pochhammer(gamma, n, k)?),
        EvalFn::Foxwright {
            upper,
            lower,
            z,
            boundary,
            series,
        } => {
            let (upper, lower) = (parse_pairs(&upper)?, parse_pairs(&lower)?);
            let spec = if boundary {
                FoxWrightSpec::with_boundary(upper, lower)?
            } else {
                FoxWrightSpec::new(upper, lower)?
            };
            specfun::fox_wright(&spec, z, &series.control()?)?
        }
        EvalFn::HmBaseline {
            n0,
            c,
            nu,
            t,
            series,
        } => fracoracle::haubold_mathai(n0, c, nu, t, &series.control()?)?,
    };
    Ok(report(&sum))
}

fn solve(
    job: &Job,
    out: &std::path::Path,
    svg: Option<&std::path::Path>,
) -> Result<String, CliError> {
    let table = kinetics::solve_grid(&job.problem, &job.times(), &job.control)?;
    let header = ["t".to_string(), "N".to_string()];
    write_atomic(out, &csv_table(&header, &table.times, &[&table.values])?)?;
    if let Some(path) = svg {
        let title = format!("Theorem {} solution", job.problem.variant().number());
        let series = [Series {
            label: "N(t)".into(),
            ys: &table.values,
        }];
        write_atomic(path, &svg_chart(&title, "t", "N(t)", &table.times, &series))?;
    }
    let flagged = table.flagged.iter().filter(|&&f| f).count();
    Ok(format!(
        "wrote {} rows to {}\nmax_error_bound = {:e}\nflagged = {flagged}\n",
        table.len(),
        out.display(),
        table.max_error_bound()
    ))
}

/// Largest relative difference over nodes where either value is nonzero.
pub fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .filter(|(x, y)| **x != 0.0 || **y != 0.0)
        .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()))
        .fold(0.0, f64::max)
}

fn verify(job: &Job, grid_step: Option<f64>) -> Result<String, CliError> {
    let nu = job.problem.nu();
    let grid = match grid_step {
        Some(h) => QuadratureGrid::with_step(job.t_end, h, nu),
        None if job.n_points >= 2 => QuadratureGrid::new(job.t_end, job.n_points - 1, nu),
        None => {
            return Err(CliError::Config(
                "n_points: verify needs at least 2 points".into(),
            ))
        }
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let table = kinetics::solve_grid(&job.problem, &grid.times(), &job.control)?;
    let residual = fracoracle::residual(&job.problem, &table, &grid, &job.control)?;
    let oracle = fracoracle::solve_problem(&job.problem, &grid, &job.control)?;
    let diff = max_rel_diff(&table.values, &oracle.values);
    let text = format!(
        "steps = {}\nresidual = {residual:e}\nmax_rel_diff = {diff:e}\n",
        grid.n_steps()
    );
    for (metric, value) in [("residual", residual), ("max_rel_diff", diff)] {
        if !(value <= VERIFY_THRESHOLD) {
            print!("{text}");
            return Err(CliError::Verification {
                metric,
                value,
                threshold: VERIFY_THRESHOLD,
            });
        }
    }
    Ok(text)
}

fn figures(specs: &[FigureSpec], dir: &std::path::Path) -> Result<String, CliError> {
    let ctl = control_from_env()?;
    if !dir.is_dir() {
        return Err(CliError::Io(format!(
            "{} is not a directory",
            dir.display()
        )));
    }
    let mut out = String::new();
    let mut violations = Vec::new();
    for spec in specs {
        let tables = spec.compute(&ctl)?;
        violations.extend(spec.positivity_violations(&tables));
        let times = spec.times();
        let cols: Vec<&[f64]> = tables.iter().map(|t| t.values.as_slice()).collect();
        let csv_path = dir.join(format!("fig{}.csv", spec.id));
        write_atomic(&csv_path, &csv_table(&spec.header(), &times, &cols)?)?;
        let series: Vec<Series> = tables
            .iter()
            .zip(LAMBDAS)
            .map(|(t, l)| Series {
                label: format!("lambda = {l:.2}"),
                ys: &t.values,
            })
            .collect();
        let svg_path = dir.join(format!("fig{}.svg", spec.id));
        write_atomic(
            &svg_path,
            &svg_chart(&spec.title(), "t", "N(t)", &times, &series),
        )?;
        out.push_str(&format!(
            "wrote {} and {}\n",
            csv_path.display(),
            svg_path.display()
        ));
    }
    if !violations.is_empty() {
        print!("{out}");
        return Err(CliError::Positivity(violations));
    }
    Ok(out)
}
