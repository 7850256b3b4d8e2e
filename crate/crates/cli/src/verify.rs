//! Verification suites. Each produces a list of named checks with the
//! measured value, the threshold and a signed margin that is non-negative
//! exactly when the check passes.

use std::time::Instant;

use anyhow::Result;
use clap::ValueEnum;
use ginibre::kernel::{factor_log_diagonal, spectrum, SymmetricKernel};
use ginibre::montecarlo::{compare, estimate_with_workers};
use ginibre::probability::prob_table;
use ginibre::specfun::{f_section, lemma4_check, ln_exp_minus_section, DEFAULT_GRID_POINTS};
use serde::{Deserialize, Serialize};

pub const NORMALIZATION_TOL: f64 = 1e-8;
pub const EDELMAN_REL_TOL: f64 = 1e-8;
pub const GAP_RATIO_MAX: f64 = 1.25;
pub const TRACE_LIMIT_WINDOW: (f64, f64) = (0.95, 1.02);
pub const CONDITIONING_MEDIAN_FACTOR: f64 = 2.0;
pub const MC_MAX_Z: f64 = 4.0;
pub const MONOTONE_ROUNDING: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Suite {
    Lemma2,
    Lemma3,
    Lemma4,
    Conditioning,
    Normalization,
    McSmall,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// `null` in JSON when the measurement is not finite.
    pub value: f64,
    pub threshold: f64,
    pub margin: f64,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        let margin = threshold - value;
        Self {
            name: name.into(),
            passed: margin >= 0.0,
            value,
            threshold,
            margin,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        let margin = value - threshold;
        Self {
            name: name.into(),
            passed: margin >= 0.0,
            value,
            threshold,
            margin,
        }
    }

    /// Strict `value < threshold`.
    pub fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        let mut c = Self::at_most(name, value, threshold);
        c.passed = value < threshold;
        c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub elapsed_seconds: f64,
    pub version: String,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Overrides the suite's largest `n` (for `mc_small`, the largest `N`).
    pub n_max: Option<usize>,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n_max: None,
            samples: 100_000,
            seed: 1,
            workers: 1,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let checks = match suite {
        Suite::Lemma2 => spectral_gap(opts.n_max.unwrap_or(1600))?,
        Suite::Lemma3 => traces(opts.n_max.unwrap_or(2000))?,
        Suite::Lemma4 => plateau(opts.n_max)?,
        Suite::Conditioning => conditioning(opts.n_max.unwrap_or(800))?,
        Suite::Normalization => normalization(opts.n_max.unwrap_or(200))?,
        Suite::McSmall => monte_carlo(opts)?,
    };
    Ok(VerifyReport {
        suite,
        passed: checks.iter().all(|c| c.passed),
        checks,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

fn doubling(from: usize, to: usize) -> Vec<usize> {
    std::iter::successors(Some(from), |n| Some(n * 2))
        .take_while(|&n| n <= to)
        .collect()
}

fn spectral_gap(n_max: usize) -> Result<Vec<Check>> {
    let kernel = SymmetricKernel::build(n_max)?;
    let mut checks = Vec::new();
    let top = spectrum(&kernel)?;
    // every smaller M_n is a leading block, so interlacing covers n < n_max
    checks.push(Check::below(format!("lambda_max(n={n_max}) < 1"), top.lambda_max(), 1.0));
    let min_diag = factor_log_diagonal(n_max)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::at_least(
        format!("log min factor diagonal finite (n={n_max})"),
        min_diag,
        f64::MIN,
    ));
    let mut gaps = Vec::new();
    for n in doubling(50, n_max) {
        let eig = spectrum(&kernel.leading(n)?)?;
        checks.push(Check::below(format!("lambda_max(n={n}) < 1"), eig.lambda_max(), 1.0));
        gaps.push((n, n as f64 * (1.0 - eig.lambda_max())));
    }
    for w in gaps.windows(2) {
        let r = w[1].1 / w[0].1;
        checks.push(Check::at_most(
            format!("gap ratio n={} vs n={}", w[1].0, w[0].0),
            r.max(1.0 / r),
            GAP_RATIO_MAX,
        ));
    }
    Ok(checks)
}

fn traces(n_max: usize) -> Result<Vec<Check>> {
    let kernel = SymmetricKernel::build(n_max.max(50))?;
    let mut checks = Vec::new();
    for n in 1..=50 {
        let eig = spectrum(&kernel.leading(n)?)?;
        let worst = (1..=50)
            .map(|m| eig.trace_power(m).map(|r| r.trace / r.bound))
            .collect::<ginibre::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        checks.push(Check::at_most(format!("trace/bound, n={n}, m=1..50"), worst, 1.0));
    }
    for n in [100, 500, 1000, n_max] {
        if n > n_max {
            continue;
        }
        let eig = spectrum(&kernel.leading(n)?)?;
        for m in [1, 2, 3, 10, 50] {
            let r = eig.trace_power(m)?;
            checks.push(Check::at_most(format!("trace/bound, n={n}, m={m}"), r.trace / r.bound, 1.0));
        }
    }
    let eig = spectrum(&kernel.leading(n_max)?)?;
    for m in 1..=3 {
        let r = eig.trace_power(m)?;
        let ratio = r.scaled / r.limit;
        checks.push(Check::at_least(
            format!("scaled trace / limit >= {}, n={n_max}, m={m}", TRACE_LIMIT_WINDOW.0),
            ratio,
            TRACE_LIMIT_WINDOW.0,
        ));
        checks.push(Check::at_most(
            format!("scaled trace / limit <= {}, n={n_max}, m={m}", TRACE_LIMIT_WINDOW.1),
            ratio,
            TRACE_LIMIT_WINDOW.1,
        ));
    }
    Ok(checks)
}

fn plateau(n: Option<usize>) -> Result<Vec<Check>> {
    let sizes: Vec<u32> = match n {
        Some(n) => vec![u32::try_from(n)?],
        None => vec![100, 400, 900, 10_000],
    };
    let mut checks = Vec::new();
    for n in sizes {
        let r = lemma4_check(n, (n as f64).powf(0.25))?;
        checks.push(Check::at_least(
            format!("plateau margin, n={n}, alpha=n^(1/4)"),
            r.worst_margin,
            0.0,
        ));
        let mut worst_rise = 0.0_f64;
        let mut min_log_exp_minus = f64::INFINITY;
        let mut prev = f64::INFINITY;
        for i in 0..DEFAULT_GRID_POINTS {
            let x = 4.0 * i as f64 / (DEFAULT_GRID_POINTS - 1) as f64;
            let f = f_section(n, x)?;
            if prev.is_finite() {
                worst_rise = worst_rise.max((f - prev) / prev);
            }
            prev = f;
            min_log_exp_minus = min_log_exp_minus.min(ln_exp_minus_section(n, x));
        }
        checks.push(Check::at_most(
            format!("f_n relative rise on [0, 4], n={n}"),
            worst_rise,
            MONOTONE_ROUNDING,
        ));
        // finite log means a positive value
        checks.push(Check::at_least(
            format!("ln exp-minus section finite on [0, 4], n={n}"),
            min_log_exp_minus,
            f64::MIN,
        ));
    }
    Ok(checks)
}

fn conditioning(n_max: usize) -> Result<Vec<Check>> {
    let sizes = doubling(100, n_max);
    if sizes.is_empty() {
        anyhow::bail!("conditioning needs n_max >= 100");
    }
    let kernel = SymmetricKernel::build(*sizes.last().unwrap())?;
    let ratios = sizes
        .iter()
        .map(|&n| Ok(spectrum(&kernel.leading(n)?)?.condition_number()? / n as f64))
        .collect::<Result<Vec<f64>>>()?;
    let mut sorted = ratios.clone();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 0 {
        0.5 * (sorted[mid - 1] + sorted[mid])
    } else {
        sorted[mid]
    };
    Ok(sizes
        .iter()
        .zip(&ratios)
        .map(|(&n, &r)| {
            Check::at_most(
                format!("cond/n at n={n} vs {CONDITIONING_MEDIAN_FACTOR} x median"),
                r,
                CONDITIONING_MEDIAN_FACTOR * median,
            )
        })
        .collect())
}

fn normalization(n_max: usize) -> Result<Vec<Check>> {
    let kernel = SymmetricKernel::build(n_max)?;
    let mut checks = Vec::new();
    for n in 1..=n_max {
        let t = prob_table(&spectrum(&kernel.leading(n)?)?)?;
        checks.push(Check::at_most(
            format!("normalization residual, n={n}"),
            t.normalization_residual,
            NORMALIZATION_TOL,
        ));
        if n <= 10 {
            let want = -((n * (2 * n - 1)) as f64 / 2.0) * std::f64::consts::LN_2;
            checks.push(Check::at_most(
                format!("all-real probability vs closed form, n={n}"),
                (t.log_p[n] - want).abs() / want.abs(),
                EDELMAN_REL_TOL,
            ));
        }
    }
    Ok(checks)
}

fn monte_carlo(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let largest = opts.n_max.unwrap_or(4);
    let mut checks = Vec::new();
    for size in (2..=largest).step_by(2) {
        let est = estimate_with_workers(size, opts.samples, opts.seed, opts.workers)?;
        let table = prob_table(&spectrum(&SymmetricKernel::build(size / 2)?)?)?;
        let cmp = compare(&est, &table)?;
        checks.push(Check::at_most(format!("max |z|, N={size}"), cmp.max_abs_z, MC_MAX_Z));
        checks.push(Check::at_most(
            format!("parity violations, N={size}"),
            est.parity_violations as f64,
            0.0,
        ));
    }
    Ok(checks)
}
