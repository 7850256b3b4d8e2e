//! Sections of the exponential series and the lower-plateau bound for
//! `e^{-nx} cosh_{n-1}(nx)`.
//!
//! The scaled sections are sums of Poisson probabilities,
//! `e^{-y} cosh_m(y) = Σ_{k<=m} P[Poisson(y) = 2k]`, so they are evaluated
//! from a pivot term computed in log space followed by a ratio recurrence.
//! Nothing overflows for any `y`, and the result keeps full relative
//! accuracy on the plateau where it sits just below 1/2.

use serde::{Deserialize, Serialize};

use super::gamma::{log_gamma_unchecked, stirling_remainder, STIRLING_MIN};
use crate::error::{Error, Result};

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Terms smaller than this fraction of the running sum are dropped.
const TAIL_CUTOFF: f64 = 1e-18;

/// Uniform grid size for the plateau check.
pub const DEFAULT_GRID_POINTS: usize = 2001;

/// `e_n(x) = Σ_{j=0}^n x^j / j!`.
pub fn exp_section(n: u32, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 1..=n {
        term *= x / j as f64;
        sum += term;
    }
    sum
}

/// `cosh_n(x) = Σ_{k=0}^n x^{2k} / (2k)!`.
pub fn cosh_section(n: u32, x: f64) -> f64 {
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=n {
        let k = k as f64;
        term *= x2 / ((2.0 * k - 1.0) * (2.0 * k));
        sum += term;
    }
    sum
}

/// `f_n(x) = e^{-nx} cosh_n(nx)` for `x >= 0`.
pub fn f_section(n: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain {
            function: "f_section",
            value: x,
            expected: "x >= 0",
        });
    }
    Ok(ln_scaled_cosh_section(n, n as f64 * x).exp())
}

/// `ln(e^{-y} cosh_order(y))` for `y >= 0`.
pub fn ln_scaled_cosh_section(order: u32, y: f64) -> f64 {
    debug_assert!(y >= 0.0);
    if y == 0.0 {
        return 0.0;
    }
    let y2 = y * y;
    // Even index closest to the Poisson mode, capped by the section order.
    let mode_half = (y / 2.0).round() as u64;
    let pivot = 2 * mode_half.min(order as u64);
    let ln_pivot = ln_poisson_pmf(pivot, y);

    let mut sum = 1.0;
    let mut term = 1.0;
    let mut m = pivot;
    while m >= 2 {
        let mf = m as f64;
        term *= mf * (mf - 1.0) / y2;
        sum += term;
        m -= 2;
        if term < TAIL_CUTOFF * sum {
            break;
        }
    }
    let mut term = 1.0;
    let mut m = pivot;
    while m < 2 * order as u64 {
        let mf = m as f64;
        term *= y2 / ((mf + 1.0) * (mf + 2.0));
        sum += term;
        m += 2;
        if term < TAIL_CUTOFF * sum {
            break;
        }
    }
    ln_pivot + sum.ln()
}

/// `ln P[Poisson(y) = m]`, accurate when `m` and `y` are both large.
fn ln_poisson_pmf(m: u64, y: f64) -> f64 {
    if m == 0 {
        return -y;
    }
    let mf = m as f64;
    let stirling = if mf >= STIRLING_MIN {
        stirling_remainder(mf)
    } else {
        log_gamma_unchecked(mf + 1.0) - (mf + 0.5) * mf.ln() + mf - HALF_LN_TWO_PI
    };
    -deviance(mf, y) - 0.5 * mf.ln() - HALF_LN_TWO_PI - stirling
}

/// `m ln(m/y) + y - m`, free of cancellation when `m ≈ y`.
fn deviance(m: f64, y: f64) -> f64 {
    let d = (m - y) / y;
    if d.abs() < 0.1 {
        // (1+d) ln(1+d) - d = Σ_{j>=2} (-1)^j d^j / (j (j-1))
        let mut acc = 0.0;
        let mut power = d;
        for j in 2..=20 {
            power *= -d;
            let jf = j as f64;
            acc += power / (jf * (jf - 1.0));
        }
        // power carries (-1)^{j-1} d^j after the update above
        -y * acc
    } else {
        y * ((1.0 + d) * d.ln_1p() - d)
    }
}

/// `ln e^{(-)}_{2n}(x)` where `e^{(-)}_{2n}(x) = e^{-2nx} e_{2n}(-2nx)`.
///
/// Uses `e^{y} e_m(-y) = 1 + Σ_{i>=0} C(m+i, i) y^{m+i+1} / (m+i+1)!` for
/// even `m`, a sum of positive terms, so the result is finite and at least
/// `-4nx` for every `x >= 0`.
pub fn ln_exp_minus_section(n: u32, x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    let y = 2.0 * n as f64 * x;
    if y == 0.0 {
        return 0.0;
    }
    let m = 2.0 * n as f64;
    let ln_y = y.ln();
    let ln_term = |i: f64| {
        log_gamma_unchecked(m + i + 1.0) - log_gamma_unchecked(m + 1.0) - log_gamma_unchecked(i + 1.0)
            + (m + i + 1.0) * ln_y
            - log_gamma_unchecked(m + i + 2.0)
    };
    // ratio T_{i+1}/T_i = y (m+i+1) / ((i+1) (m+i+2)) falls below 1 past the peak
    let mut peak = 0.0_f64;
    let guess = (y - 1.0).max(0.0).floor();
    for cand in [guess, guess + 1.0, (guess - 1.0).max(0.0)] {
        if ln_term(cand) > ln_term(peak) {
            peak = cand;
        }
    }
    let ln_peak = ln_term(peak);

    let mut sum = 1.0;
    let mut term = 1.0;
    let mut i = peak;
    while i >= 1.0 {
        term *= i * (m + i + 1.0) / (y * (m + i));
        sum += term;
        i -= 1.0;
        if term < TAIL_CUTOFF * sum {
            break;
        }
    }
    let mut term = 1.0;
    let mut i = peak;
    loop {
        term *= y * (m + i + 1.0) / ((i + 1.0) * (m + i + 2.0));
        sum += term;
        i += 1.0;
        if term < TAIL_CUTOFF * sum {
            break;
        }
    }
    let ln_j = ln_peak + sum.ln();
    // ln(1 + J) = max + ln(1 + e^{-|ln J|})
    let ln_one_plus_j = if ln_j > 0.0 {
        ln_j + (-ln_j).exp().ln_1p()
    } else {
        ln_j.exp().ln_1p()
    };
    -y + ln_one_plus_j - y
}

/// The explicit constants of the plateau bound for one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectionBoundParams {
    pub n: u32,
    pub alpha: f64,
    /// Plateau height `1/2 - (4π)^{-1/2} α^{-1} e^{-α²/4}`.
    pub h: f64,
    /// Plateau edge `2 - α n^{-1/2}`.
    pub s: f64,
}

impl SectionBoundParams {
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be positive".into()));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Precondition(format!("alpha must be positive, got {alpha}")));
        }
        let s = 2.0 - alpha / (n as f64).sqrt();
        if !(s > 0.0) {
            return Err(Error::Precondition(format!(
                "empty plateau: alpha n^(-1/2) = {} >= 2",
                alpha / (n as f64).sqrt()
            )));
        }
        let h = 0.5
            - (-alpha * alpha / 4.0).exp() / (alpha * (4.0 * std::f64::consts::PI).sqrt());
        Ok(Self { n, alpha, h, s })
    }

    /// The default sequence `α_n = n^{1/4}`.
    pub fn quarter_power(n: u32) -> Result<Self> {
        Self::new(n, (n as f64).powf(0.25))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma4Report {
    pub params: SectionBoundParams,
    pub grid_points: usize,
    /// `min_x [e^{-nx} cosh_{n-1}(nx) - h]` over the grid on `[0, s]`.
    pub worst_margin: f64,
    pub worst_x: f64,
    pub passed: bool,
}

/// Checks `e^{-nx} cosh_{n-1}(nx) >= h` on a uniform grid over `[0, s]`.
/// Nothing is asserted for `x > s`.
pub fn lemma4_check(n: u32, alpha: f64) -> Result<Lemma4Report> {
    lemma4_check_on_grid(n, alpha, DEFAULT_GRID_POINTS)
}

pub fn lemma4_check_on_grid(n: u32, alpha: f64, grid_points: usize) -> Result<Lemma4Report> {
    let params = SectionBoundParams::new(n, alpha)?;
    if grid_points < 2 {
        return Err(Error::Precondition("grid needs at least two points".into()));
    }
    let nf = n as f64;
    let mut worst_margin = f64::INFINITY;
    let mut worst_x = 0.0;
    for i in 0..grid_points {
        let x = params.s * i as f64 / (grid_points - 1) as f64;
        let value = ln_scaled_cosh_section(n - 1, nf * x).exp();
        let margin = value - params.h;
        if margin < worst_margin {
            worst_margin = margin;
            worst_x = x;
        }
    }
    Ok(Lemma4Report {
        params,
        grid_points,
        worst_margin,
        worst_x,
        passed: worst_margin >= 0.0,
    })
}

/// Smallest `n0` such that the plateau check with `α_n = n^{1/4}` passes
/// for every `n` in `n0..=n_max`.
pub fn empirical_threshold(n_max: u32, grid_points: usize) -> Result<u32> {
    let mut n0 = 1;
    for n in (1..=n_max).rev() {
        let alpha = (n as f64).powf(0.25);
        if !lemma4_check_on_grid(n, alpha, grid_points)?.passed {
            n0 = n + 1;
            break;
        }
    }
    Ok(n0)
}
