//! Command-line front end for the `ginibre` library.
//!
//! Every command writes CSV or JSON to stdout or, with `--out`, atomically
//! to a file. Commands that evaluate a check report failure through
//! [`Status::Failed`], which the binary maps to exit status 1.

pub mod output;
pub mod plot;
pub mod verify;

use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ginibre::kernel::{spectrum, SymmetricKernel, DEFAULT_MAX_N};
use ginibre::montecarlo::{compare, estimate_with_workers};
use ginibre::probability::{fit_asymptote, log_prob_no_real, prob_table, rate_constant, FitModel};
use ginibre::specfun::{f_section, lemma4_check_on_grid, ln_exp_minus_section, DEFAULT_GRID_POINTS};
use serde::{Deserialize, Serialize};

use output::{emit, emit_either, json_bytes, write_atomic, Format};
use plot::Plot;
use verify::{run_suite, Suite, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed,
}

impl Status {
    fn from_pass(passed: bool) -> Self {
        if passed {
            Status::Passed
        } else {
            Status::Failed
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ginibre", version, about = "Real-eigenvalue count probabilities of real Ginibre matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ln p_{2n,0} and p_{2n,0} for one n or a range of n.
    Exact {
        #[command(flatten)]
        range: HalfSizeRange,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The full table ln p_{2n,2k}, k = 0..n.
    Table {
        #[command(flatten)]
        range: HalfSizeRange,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Least-squares fit of ln p_{N,0} against sqrt(N). The range flags are matrix sizes N.
    Fit {
        #[arg(long, default_value_t = 100)]
        n_min: usize,
        #[arg(long, default_value_t = 2000)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        step: usize,
        #[arg(long, value_enum, default_value_t = ModelArg::TwoTerm)]
        model: ModelArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tr M_n^m for m = 1..m_max against its upper bound and limit.
    Traces {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        m_max: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Eigenvalues of M_n with conditioning summary.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Scaled cosh section e^{-nx} cosh_n(nx) on a grid and the plateau check.
    Sections {
        #[arg(long)]
        n: u32,
        /// Plateau parameter; defaults to n^(1/4).
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        grid: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Monte Carlo histogram of real-eigenvalue counts, compared with the exact table.
    Mc {
        /// Matrix size N (even).
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a verification suite and write a JSON report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest n for the suite (largest N for mc_small).
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// `--n` alone or `--n-min/--n-max/--step`, in units of n = N/2.
#[derive(Debug, Args)]
pub struct HalfSizeRange {
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    pub n: Option<usize>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub step: usize,
}

impl HalfSizeRange {
    pub fn values(&self) -> Result<Vec<usize>> {
        let values = match (self.n, self.n_min, self.n_max) {
            (Some(n), _, _) => vec![n],
            (None, Some(lo), Some(hi)) => grid(lo, hi, self.step)?,
            _ => bail!("give --n or both --n-min and --n-max"),
        };
        ensure!(values.iter().all(|&n| n >= 1), "n must be at least 1");
        Ok(values)
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG plot (fit only), next to --out or as fit.svg.
    #[arg(long)]
    pub plot: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ModelArg {
    TwoTerm,
    ThreeTerm,
}

impl From<ModelArg> for FitModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::TwoTerm => FitModel::TwoTerm,
            ModelArg::ThreeTerm => FitModel::ThreeTerm,
        }
    }
}

fn grid(lo: usize, hi: usize, step: usize) -> Result<Vec<usize>> {
    ensure!(step >= 1, "--step must be positive");
    ensure!(lo <= hi, "empty range {lo}..={hi}");
    Ok((lo..=hi).step_by(step).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactRow {
    pub n: usize,
    #[serde(rename = "N")]
    pub size: usize,
    pub log_p0: f64,
    pub p0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    #[serde(rename = "N")]
    pub size: usize,
    pub k: usize,
    pub log_p: f64,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRow {
    #[serde(rename = "N")]
    pub size: usize,
    #[serde(rename = "sqrtN")]
    pub sqrt_size: f64,
    pub log_p0: f64,
    pub fit: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub n: usize,
    pub m: u32,
    pub trace: f64,
    pub scaled: f64,
    pub limit: f64,
    pub bound: f64,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenRow {
    pub n: usize,
    pub i: usize,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionRow {
    pub x: f64,
    pub f: f64,
    pub ln_exp_minus: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McRow {
    pub k: usize,
    pub real_eigenvalues: usize,
    pub count: u64,
    pub phat: f64,
    pub stderr: f64,
    pub p_exact: f64,
    pub z: f64,
}

pub fn run(cli: &Cli) -> Result<Status> {
    let plot_requested = match &cli.command {
        Command::Exact { out, .. }
        | Command::Table { out, .. }
        | Command::Traces { out, .. }
        | Command::Spectrum { out, .. }
        | Command::Sections { out, .. }
        | Command::Mc { out, .. } => out.plot,
        Command::Fit { .. } | Command::Verify { .. } => false,
    };
    ensure!(!plot_requested, "--plot is only supported by the fit command");
    match &cli.command {
        Command::Exact { range, out } => cmd_exact(&range.values()?, out),
        Command::Table { range, out } => cmd_table(&range.values()?, out),
        Command::Fit {
            n_min,
            n_max,
            step,
            model,
            out,
        } => cmd_fit(&grid(*n_min, *n_max, *step)?, (*model).into(), out),
        Command::Traces { n, m_max, out } => cmd_traces(*n, *m_max, out),
        Command::Spectrum { n, out } => cmd_spectrum(*n, out),
        Command::Sections { n, alpha, grid, out } => cmd_sections(*n, *alpha, *grid, out),
        Command::Mc {
            size,
            samples,
            seed,
            workers,
            out,
        } => cmd_mc(*size, *samples, *seed, *workers, out),
        Command::Verify {
            suite,
            n_max,
            samples,
            seed,
            workers,
            out,
        } => {
            let opts = VerifyOptions {
                n_max: *n_max,
                samples: *samples,
                seed: *seed,
                workers: *workers,
            };
            let report = run_suite(*suite, &opts)?;
            emit(out.as_deref(), &json_bytes(&report)?)?;
            Ok(Status::from_pass(report.passed))
        }
    }
}

fn largest_kernel(ns: &[usize]) -> Result<SymmetricKernel> {
    let largest = *ns.iter().max().context("empty range")?;
    ensure!(largest <= DEFAULT_MAX_N, "n = {largest} exceeds the maximum {DEFAULT_MAX_N}");
    Ok(SymmetricKernel::build(largest)?)
}

pub fn exact_rows(ns: &[usize]) -> Result<Vec<ExactRow>> {
    let kernel = largest_kernel(ns)?;
    ns.iter()
        .map(|&n| {
            let log_p0 = log_prob_no_real(&spectrum(&kernel.leading(n)?)?)?;
            Ok(ExactRow {
                n,
                size: 2 * n,
                log_p0,
                p0: log_p0.exp(),
            })
        })
        .collect()
}

fn cmd_exact(ns: &[usize], out: &OutputArgs) -> Result<Status> {
    let rows = exact_rows(ns)?;
    emit_either(out.format, out.out.as_deref(), &rows, &rows)?;
    Ok(Status::Passed)
}

pub fn table_rows(ns: &[usize]) -> Result<Vec<TableRow>> {
    let kernel = largest_kernel(ns)?;
    let mut rows = Vec::new();
    for &n in ns {
        let t = prob_table(&spectrum(&kernel.leading(n)?)?)?;
        rows.extend(t.log_p.iter().enumerate().map(|(k, &log_p)| TableRow {
            n,
            size: 2 * n,
            k,
            log_p,
            p: log_p.exp(),
        }));
    }
    Ok(rows)
}

fn cmd_table(ns: &[usize], out: &OutputArgs) -> Result<Status> {
    let rows = table_rows(ns)?;
    emit_either(out.format, out.out.as_deref(), &rows, &rows)?;
    Ok(Status::Passed)
}

#[derive(Debug, Serialize)]
struct FitDoc<'a> {
    fit: &'a ginibre::FitResult,
    rate_constant: f64,
    points: &'a [FitRow],
}

fn cmd_fit(sizes: &[usize], model: FitModel, out: &OutputArgs) -> Result<Status> {
    ensure!(sizes.iter().all(|s| s % 2 == 0 && *s > 0), "matrix sizes N must be positive and even");
    let halves: Vec<usize> = sizes.iter().map(|s| s / 2).collect();
    let series: Vec<(usize, f64)> = exact_rows(&halves)?
        .into_iter()
        .map(|r| (r.size, r.log_p0))
        .collect();
    let fit = fit_asymptote(&series, model)?;
    let rows: Vec<FitRow> = series
        .iter()
        .map(|&(size, log_p0)| {
            let f = fit.predict(size);
            FitRow {
                size,
                sqrt_size: (size as f64).sqrt(),
                log_p0,
                fit: f,
                residual: log_p0 - f,
            }
        })
        .collect();
    let doc = FitDoc {
        fit: &fit,
        rate_constant: rate_constant(),
        points: &rows,
    };
    emit_either(out.format, out.out.as_deref(), &rows, &doc)?;
    if out.plot {
        let path = plot_path(out.out.as_deref());
        let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.sqrt_size, r.log_p0)).collect();
        let line: Vec<(f64, f64)> = (0..=100)
            .map(|i| {
                let (lo, hi) = (sizes[0] as f64, *sizes.last().unwrap() as f64);
                let size = lo + (hi - lo) * i as f64 / 100.0;
                let r = size.sqrt();
                (r, fit.b1 * r + fit.b2 + fit.b3.map_or(0.0, |b| b / r))
            })
            .collect();
        let legend = match fit.b3 {
            None => format!("fit: {:.4} sqrt(N) + {:.5}", fit.b1, fit.b2),
            Some(b3) => format!("fit: {:.4} sqrt(N) + {:.5} + {:.4}/sqrt(N)", fit.b1, fit.b2, b3),
        };
        let svg = Plot {
            title: "ln p(N, 0) against sqrt(N)",
            x_label: "sqrt(N)",
            y_label: "ln p(N, 0)",
            points: &points,
            line: &line,
            legend: &legend,
        }
        .to_svg();
        write_atomic(&path, svg.as_bytes())?;
    }
    Ok(Status::Passed)
}

fn plot_path(out: Option<&Path>) -> PathBuf {
    match out {
        Some(p) => p.with_extension("svg"),
        None => PathBuf::from("fit.svg"),
    }
}

fn cmd_traces(n: usize, m_max: u32, out: &OutputArgs) -> Result<Status> {
    ensure!(m_max >= 1, "--m-max must be positive");
    let eig = spectrum(&largest_kernel(&[n])?)?;
    let rows = (1..=m_max)
        .map(|m| {
            let r = eig.trace_power(m)?;
            Ok(TraceRow {
                n,
                m,
                trace: r.trace,
                scaled: r.scaled,
                limit: r.limit,
                bound: r.bound,
                within_bound: r.within_bound(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    emit_either(out.format, out.out.as_deref(), &rows, &rows)?;
    Ok(Status::from_pass(rows.iter().all(|r| r.within_bound)))
}

#[derive(Debug, Serialize)]
struct SpectrumDoc<'a> {
    n: usize,
    route: ginibre::kernel::EigenRoute,
    lambda_max: f64,
    lambda_min: f64,
    scaled_gap: f64,
    condition_number: f64,
    trace_check_residual: f64,
    frobenius_check_residual: f64,
    lambdas: &'a [f64],
}

fn cmd_spectrum(n: usize, out: &OutputArgs) -> Result<Status> {
    let eig = spectrum(&largest_kernel(&[n])?)?;
    let rows: Vec<EigenRow> = eig
        .lambdas
        .iter()
        .enumerate()
        .map(|(i, &lambda)| EigenRow { n, i: i + 1, lambda })
        .collect();
    let doc = SpectrumDoc {
        n,
        route: eig.route,
        lambda_max: eig.lambda_max(),
        lambda_min: eig.lambda_min(),
        scaled_gap: n as f64 * (1.0 - eig.lambda_max()),
        condition_number: eig.condition_number()?,
        trace_check_residual: eig.trace_check_residual,
        frobenius_check_residual: eig.frobenius_check_residual,
        lambdas: &eig.lambdas,
    };
    emit_either(out.format, out.out.as_deref(), &rows, &doc)?;
    Ok(Status::from_pass(eig.lambda_max() < 1.0))
}

#[derive(Debug, Serialize)]
struct SectionsDoc<'a> {
    report: &'a ginibre::specfun::Lemma4Report,
    points: &'a [SectionRow],
}

fn cmd_sections(n: u32, alpha: Option<f64>, grid_points: usize, out: &OutputArgs) -> Result<Status> {
    let alpha = alpha.unwrap_or((n as f64).powf(0.25));
    let report = lemma4_check_on_grid(n, alpha, grid_points)?;
    let s = report.params.s;
    let rows = (0..grid_points)
        .map(|i| {
            let x = s * i as f64 / (grid_points - 1) as f64;
            let f = f_section(n, x)?;
            Ok(SectionRow {
                x,
                f,
                ln_exp_minus: ln_exp_minus_section(n, x),
                margin: f - report.params.h,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let doc = SectionsDoc {
        report: &report,
        points: &rows,
    };
    emit_either(out.format, out.out.as_deref(), &rows, &doc)?;
    Ok(Status::from_pass(report.passed))
}

#[derive(Debug, Serialize)]
struct McDoc<'a> {
    estimate: &'a ginibre::MCEstimate,
    comparison: &'a ginibre::montecarlo::Comparison,
    max_abs_z_limit: f64,
}

fn cmd_mc(size: usize, samples: u64, seed: u64, workers: usize, out: &OutputArgs) -> Result<Status> {
    ensure!(size >= 2 && size % 2 == 0, "--size must be even and at least 2");
    let est = estimate_with_workers(size, samples, seed, workers)?;
    let table = prob_table(&spectrum(&SymmetricKernel::build(size / 2)?)?)?;
    let cmp = compare(&est, &table)?;
    let rows: Vec<McRow> = (0..est.counts.len())
        .map(|k| McRow {
            k,
            real_eigenvalues: 2 * k,
            count: est.counts[k],
            phat: est.phat[k],
            stderr: est.stderr[k],
            p_exact: cmp.exact[k],
            z: cmp.z_scores[k],
        })
        .collect();
    let doc = McDoc {
        estimate: &est,
        comparison: &cmp,
        max_abs_z_limit: verify::MC_MAX_Z,
    };
    emit_either(out.format, out.out.as_deref(), &rows, &doc)?;
    Ok(Status::from_pass(cmp.max_abs_z <= verify::MC_MAX_Z))
}
