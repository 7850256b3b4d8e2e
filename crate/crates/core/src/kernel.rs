//! The Gamma-ratio kernel
//! `M_n(j,k) = Γ(j+k-3/2) / sqrt(2π Γ(2j-1) Γ(2k-1))`, `1 <= j,k <= n`,
//! and its spectral diagnostics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{squared_singular_values, symmetric_eigenvalues};
use crate::quadrature::GaussLaguerre;
use crate::specfun::{log_gamma_unchecked, stirling_remainder};

pub const DEFAULT_MAX_N: usize = 5000;
pub const DEFAULT_QUADRATURE_NODES: usize = 64;

/// Largest `n` for which [`spectrum`] picks the factor-Jacobi route.
/// Beyond this the smallest eigenvalues fall below the double range.
pub const FACTOR_JACOBI_MAX_N: usize = 256;

/// `ln e^{x}` below which an entry is stored as exactly zero.
const UNDERFLOW_LOG: f64 = -745.0;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// `ln M(j, k)` for `j, k >= 1` (1-based, symmetric).
///
/// Large indices use Stirling's form with the leading terms cancelled
/// analytically, so the result keeps absolute accuracy near `1e-15` even
/// where the individual `ln Γ` values are in the tens of thousands.
pub fn entry_log(j: usize, k: usize) -> f64 {
    assert!(j >= 1 && k >= 1, "kernel indices are 1-based");
    let (j, k) = if j <= k { (j, k) } else { (k, j) };
    let a = (j + k) as f64 - 1.5;
    let b = 2.0 * j as f64 - 1.0;
    let c = 2.0 * k as f64 - 1.0;
    if b < 11.0 {
        return log_gamma_unchecked(a)
            - 0.5 * log_gamma_unchecked(b)
            - 0.5 * log_gamma_unchecked(c)
            - HALF_LN_TWO_PI;
    }
    let diff = j as f64 - k as f64;
    let ln_b_over_a = ((diff + 0.5) / a).ln_1p();
    let ln_c_over_a = ((0.5 - diff) / a).ln_1p();
    -0.5 * a.ln() - 0.5 * (b - 0.5) * ln_b_over_a - 0.5 * (c - 0.5) * ln_c_over_a + 0.5
        - HALF_LN_TWO_PI
        + stirling_remainder(a)
        - 0.5 * stirling_remainder(b)
        - 0.5 * stirling_remainder(c)
}

/// The entry by Gauss–Laguerre quadrature of its integral representation,
/// `(2π)^{-1/2} ∫ x^{j+k-5/2} e^{-x} dx / sqrt(Γ(2j-1) Γ(2k-1))`.
///
/// The integrand is `x^{j+k-2}` against the weight `x^{-1/2} e^{-x}`, so the
/// rule is exact whenever `j + k - 2 <= 2 nodes - 1`; anything else is
/// rejected.
pub fn entry_quadrature(j: usize, k: usize, nodes: usize) -> Result<f64> {
    let rule = GaussLaguerre::new(nodes.max(1), -0.5)?;
    entry_quadrature_with(&rule, j, k)
}

pub fn entry_quadrature_with(rule: &GaussLaguerre, j: usize, k: usize) -> Result<f64> {
    if j == 0 || k == 0 {
        return Err(Error::Precondition("kernel indices are 1-based".into()));
    }
    if rule.nodes().len() < 50 {
        return Err(Error::Precondition(format!(
            "need at least 50 quadrature nodes, got {}",
            rule.nodes().len()
        )));
    }
    if rule.alpha() != -0.5 {
        return Err(Error::Precondition("quadrature weight exponent must be -1/2".into()));
    }
    let power = j + k - 2;
    if power > rule.exact_degree() {
        return Err(Error::Precondition(format!(
            "degree {power} exceeds exactness {} of the rule",
            rule.exact_degree()
        )));
    }
    let scale = -0.5 * log_gamma_unchecked(2.0 * j as f64 - 1.0)
        - 0.5 * log_gamma_unchecked(2.0 * k as f64 - 1.0)
        - HALF_LN_TWO_PI;
    Ok(rule.moment(power as u32) * scale.exp())
}

/// `ln G(i, m)` for the lower-triangular factor `M_n = G G^T` (1-based,
/// `m <= i`): `G(i,m) = 2^{-1/4} 2^{-(2i-m-1)} sqrt((2i-2)!/(2m-2)!) / (i-m)!`.
///
/// The columns of `G` are the monomials expanded in the monic generalized
/// Laguerre polynomials with `α = -1/2`. Every diagonal entry is positive,
/// so `M_n` is positive definite for every `n`.
pub fn factor_entry_log(i: usize, m: usize) -> f64 {
    assert!(m >= 1 && m <= i, "factor is lower triangular and 1-based");
    let (i0, m0) = ((i - 1) as f64, (m - 1) as f64);
    let ln2 = std::f64::consts::LN_2;
    -0.25 * ln2 - (2.0 * i0 - m0) * ln2
        + 0.5 * (log_gamma_unchecked(2.0 * i0 + 1.0) - log_gamma_unchecked(2.0 * m0 + 1.0))
        - log_gamma_unchecked(i0 - m0 + 1.0)
}

/// `ln G(i, i) = -(i - 3/4) ln 2`.
pub fn factor_log_diagonal(n: usize) -> Vec<f64> {
    (1..=n).map(|i| factor_entry_log(i, i)).collect()
}

/// The symmetric kernel with entries and their logarithms, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricKernel {
    n: usize,
    entries: Vec<f64>,
    log_entries: Vec<f64>,
}

impl SymmetricKernel {
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with_max(n, DEFAULT_MAX_N)
    }

    pub fn build_with_max(n: usize, max_n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("kernel dimension must be positive".into()));
        }
        if n > max_n {
            return Err(Error::Resource { requested: n, max: max_n });
        }
        let mut entries = vec![0.0; n * n];
        let mut log_entries = vec![0.0; n * n];
        for j in 0..n {
            for k in 0..=j {
                let l = entry_log(j + 1, k + 1);
                let (l, v) = if l < UNDERFLOW_LOG {
                    (f64::NEG_INFINITY, 0.0)
                } else {
                    (l, l.exp())
                };
                entries[j * n + k] = v;
                entries[k * n + j] = v;
                log_entries[j * n + k] = l;
                log_entries[k * n + j] = l;
            }
        }
        Ok(Self { n, entries, log_entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major `n × n` entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn log_entries(&self) -> &[f64] {
        &self.log_entries
    }

    /// `M(j, k)`, 1-based.
    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.entries[(j - 1) * self.n + (k - 1)]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.entries[i * self.n + i]).sum()
    }

    pub fn frobenius_squared(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum()
    }

    /// The leading `m × m` principal submatrix, which is `M_m`.
    pub fn leading(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.n {
            return Err(Error::Precondition(format!(
                "leading block {m} outside 1..={}",
                self.n
            )));
        }
        let mut entries = Vec::with_capacity(m * m);
        let mut log_entries = Vec::with_capacity(m * m);
        for j in 0..m {
            entries.extend_from_slice(&self.entries[j * self.n..j * self.n + m]);
            log_entries.extend_from_slice(&self.log_entries[j * self.n..j * self.n + m]);
        }
        Ok(Self { n: m, entries, log_entries })
    }

    /// Row-major `I - M_n`.
    pub fn identity_minus(&self) -> Vec<f64> {
        let mut a: Vec<f64> = self.entries.iter().map(|x| -x).collect();
        for i in 0..self.n {
            a[i * self.n + i] += 1.0;
        }
        a
    }

    /// Columns of the explicit factor `G` with `M_n = G G^T`.
    pub fn factor_columns(&self) -> Vec<Vec<f64>> {
        let n = self.n;
        (1..=n)
            .map(|m| {
                let mut col = vec![0.0; n];
                for i in m..=n {
                    col[i - 1] = factor_entry_log(i, m).exp();
                }
                col
            })
            .collect()
    }

    /// Largest entrywise relative deviation of `G G^T` from `M_n`.
    pub fn factor_residual(&self) -> f64 {
        let n = self.n;
        let cols = self.factor_columns();
        let mut worst = 0.0_f64;
        for j in 0..n {
            for k in 0..=j {
                let reconstructed: f64 = cols.iter().map(|c| c[j] * c[k]).sum();
                let m = self.entries[j * n + k];
                if m > 0.0 {
                    worst = worst.max((reconstructed - m).abs() / m);
                }
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenRoute {
    /// Householder tridiagonalization and implicit QL on `M_n`. Absolute
    /// accuracy `O(eps)` on every eigenvalue.
    Tridiagonal,
    /// One-sided Jacobi on the explicit factor `G`. Every eigenvalue comes
    /// out as a squared norm, so all are positive; the smallest ones keep
    /// full relative accuracy up to about `n = 40` and degrade slowly after.
    FactorJacobi,
}

/// Eigenvalues of `M_n`, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub n: usize,
    pub lambdas: Vec<f64>,
    /// `|Σλ - tr M| / tr M`.
    pub trace_check_residual: f64,
    /// `|Σλ² - ||M||_F²| / ||M||_F²`.
    pub frobenius_check_residual: f64,
    pub route: EigenRoute,
}

/// Picks the factor-Jacobi route up to [`FACTOR_JACOBI_MAX_N`] and the
/// tridiagonal route above it.
pub fn spectrum(kernel: &SymmetricKernel) -> Result<Spectrum> {
    let route = if kernel.n() <= FACTOR_JACOBI_MAX_N {
        EigenRoute::FactorJacobi
    } else {
        EigenRoute::Tridiagonal
    };
    spectrum_via(kernel, route)
}

pub fn spectrum_via(kernel: &SymmetricKernel, route: EigenRoute) -> Result<Spectrum> {
    let n = kernel.n();
    let mut lambdas = match route {
        EigenRoute::Tridiagonal => {
            let mut a = kernel.entries().to_vec();
            symmetric_eigenvalues(&mut a, n)?
        }
        EigenRoute::FactorJacobi => squared_singular_values(kernel.factor_columns())?,
    };
    lambdas.sort_by(|a, b| b.total_cmp(a));

    let trace = kernel.trace();
    let frob = kernel.frobenius_squared();
    let trace_check_residual = (lambdas.iter().sum::<f64>() - trace).abs() / trace;
    let frobenius_check_residual =
        (lambdas.iter().map(|l| l * l).sum::<f64>() - frob).abs() / frob;
    let tol = 1e-9 * n as f64;
    if trace_check_residual > tol || frobenius_check_residual > tol {
        return Err(Error::Degenerate(format!(
            "eigenvalues inconsistent with the matrix: trace residual {trace_check_residual:e}, \
             Frobenius residual {frobenius_check_residual:e}"
        )));
    }
    Ok(Spectrum {
        n,
        lambdas,
        trace_check_residual,
        frobenius_check_residual,
        route,
    })
}

/// `Tr M_n^m` with the upper bound and the large-`n` limit it is compared to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub n: usize,
    pub m: u32,
    pub trace: f64,
    /// `trace / sqrt(2n)`.
    pub scaled: f64,
    /// `sqrt(n/(πm)) (1 + 1/n) + 1/4 + (1/8) sqrt(m/(πn)) (1 + 2/n)`.
    pub bound: f64,
    /// `1 / sqrt(2πm)`.
    pub limit: f64,
}

impl TraceReport {
    pub fn within_bound(&self) -> bool {
        self.trace > 0.0 && self.trace <= self.bound
    }
}

pub fn trace_upper_bound(n: usize, m: u32) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let pi = std::f64::consts::PI;
    (nf / (pi * mf)).sqrt() * (1.0 + 1.0 / nf) + 0.25 + 0.125 * (mf / (pi * nf)).sqrt() * (1.0 + 2.0 / nf)
}

impl Spectrum {
    pub fn lambda_max(&self) -> f64 {
        self.lambdas[0]
    }

    pub fn lambda_min(&self) -> f64 {
        *self.lambdas.last().unwrap()
    }

    /// True when every eigenvalue lies strictly inside `(0, 1)`.
    pub fn is_resolved(&self) -> bool {
        self.lambdas.iter().all(|&l| l > 0.0 && l < 1.0)
    }

    pub fn trace_power(&self, m: u32) -> Result<TraceReport> {
        if m == 0 {
            return Err(Error::Precondition("trace power m must be positive".into()));
        }
        let trace: f64 = self.lambdas.iter().rev().map(|l| l.powi(m as i32)).sum();
        Ok(TraceReport {
            n: self.n,
            m,
            trace,
            scaled: trace / (2.0 * self.n as f64).sqrt(),
            bound: trace_upper_bound(self.n, m),
            limit: 1.0 / (2.0 * std::f64::consts::PI * m as f64).sqrt(),
        })
    }

    /// 2-norm condition number of `I - M_n`, `(1 - λ_min) / (1 - λ_max)`.
    pub fn condition_number(&self) -> Result<f64> {
        let top = self.lambda_max();
        if top >= 1.0 {
            return Err(Error::Degenerate(format!("largest eigenvalue {top} is not below 1")));
        }
        Ok((1.0 - self.lambda_min()) / (1.0 - top))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub n: usize,
    pub lambda_max: f64,
    /// `n (1 - λ_max)`.
    pub scaled_gap: f64,
}

/// `λ_max` and `n (1 - λ_max)` for each requested `n`. Fails if any
/// `λ_max >= 1`. All rows come from leading blocks of one kernel.
pub fn spectral_gap_profile(ns: &[usize]) -> Result<Vec<GapRow>> {
    let Some(&largest) = ns.iter().max() else {
        return Ok(Vec::new());
    };
    let full = SymmetricKernel::build(largest)?;
    ns.iter()
        .map(|&n| {
            let kernel = full.leading(n)?;
            let eig = spectrum(&kernel)?;
            let lambda_max = eig.lambda_max();
            if lambda_max >= 1.0 {
                return Err(Error::Degenerate(format!(
                    "n = {n}: largest eigenvalue {lambda_max} is not below 1"
                )));
            }
            Ok(GapRow {
                n,
                lambda_max,
                scaled_gap: n as f64 * (1.0 - lambda_max),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn hand_computed_entries() {
        assert!((entry_log(1, 1) - SQRT_HALF.ln()).abs() < 1e-15);
        assert!((entry_log(1, 2) - 0.25_f64.ln()).abs() < 1e-15);
        assert!((entry_log(2, 1) - 0.25_f64.ln()).abs() < 1e-15);
        let m22 = 3.0 / (8.0 * 2f64.sqrt());
        assert!((entry_log(2, 2) - m22.ln()).abs() < 1e-15);
    }

    #[test]
    fn high_precision_entries() {
        // ln M(j,k) from 50-digit evaluation
        let cases = [
            (3, 5, -2.147_704_839_894_129_1),
            (7, 12, -3.067_021_561_005_878_3),
            (20, 20, -2.741_020_991_853_916),
            (500, 520, -4.578_238_734_273_25),
            (1000, 1000, -4.718_952_075_370_832),
            (1, 1000, -694.813_540_698_349_8),
            (2000, 1950, -5.376_036_769_459_815),
            (5000, 4990, -5.528_526_631_374_668),
        ];
        for (j, k, expected) in cases {
            let got = entry_log(j, k);
            assert!((got - expected).abs() < 2e-14 * expected.abs().max(1.0), "({j},{k}): {got}");
        }
    }

    #[test]
    fn stirling_branch_matches_direct_form() {
        for j in 6..40 {
            for k in j..60 {
                let direct = log_gamma_unchecked((j + k) as f64 - 1.5)
                    - 0.5 * log_gamma_unchecked(2.0 * j as f64 - 1.0)
                    - 0.5 * log_gamma_unchecked(2.0 * k as f64 - 1.0)
                    - HALF_LN_TWO_PI;
                assert!((entry_log(j, k) - direct).abs() < 1e-12, "({j},{k})");
            }
        }
    }

    #[test]
    fn small_kernels() {
        let k1 = SymmetricKernel::build(1).unwrap();
        assert!((k1.entry(1, 1) - SQRT_HALF).abs() < 1e-15);
        let k2 = SymmetricKernel::build(2).unwrap();
        assert!((k2.entry(1, 2) - 0.25).abs() < 1e-15);
        assert!((k2.entry(2, 2) - 0.265_165_042_944_955_3).abs() < 1e-15);
        assert_eq!(k2.entry(1, 2), k2.entry(2, 1));
    }

    #[test]
    fn build_rejects_oversize() {
        assert_eq!(
            SymmetricKernel::build_with_max(11, 10).unwrap_err(),
            Error::Resource { requested: 11, max: 10 }
        );
        assert!(SymmetricKernel::build(0).is_err());
    }

    #[test]
    fn far_off_diagonal_underflows_to_zero() {
        let k = SymmetricKernel::build(1200).unwrap();
        let far = (1200 - 1) * 1200;
        assert!(entry_log(1200, 1) < UNDERFLOW_LOG);
        assert_eq!(k.entries()[far], 0.0);
        assert_eq!(k.log_entries()[far], f64::NEG_INFINITY);
    }

    #[test]
    fn factor_reproduces_kernel() {
        for n in [1, 2, 5, 30, 120] {
            let k = SymmetricKernel::build(n).unwrap();
            assert!(k.factor_residual() < 1e-12, "n = {n}: {}", k.factor_residual());
        }
        let diag = factor_log_diagonal(4);
        for (i, d) in diag.iter().enumerate() {
            let expected = -(i as f64 + 0.25) * std::f64::consts::LN_2;
            assert!((d - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn quadrature_preconditions() {
        assert!(entry_quadrature(1, 1, 20).is_err());
        assert!(entry_quadrature(64, 66, 64).is_err());
        assert!(entry_quadrature(0, 1, 64).is_err());
        let v = entry_quadrature(1, 1, 64).unwrap();
        assert!((v - SQRT_HALF).abs() < 1e-10);
    }

    #[test]
    fn trace_bound_formula() {
        let pi = std::f64::consts::PI;
        let expected = (1.0 / pi).sqrt() * 2.0 + 0.25 + 0.125 * (1.0 / pi).sqrt() * 3.0;
        assert!((trace_upper_bound(1, 1) - expected).abs() < 1e-15);
    }
}
