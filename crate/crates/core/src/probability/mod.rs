//! Exact probabilities `p_{2n,2k}` from the spectrum of `M_n`.
//!
//! `Σ_k z^k p_{2n,2k} = det(I + (z-1) M_n) = Π_i (1 + (z-1) λ_i)`, hence
//! `p_{2n,0} = Π (1 - λ_i)` and `p_{2n,2k} = p_{2n,0} e_k(ν)` with
//! `ν_i = λ_i / (1 - λ_i)`.

mod esym;
mod fit;

pub use esym::{elementary_symmetric, Scaled};
pub use fit::{fit_asymptote, log_p0_series, rate_constant, FitModel, FitResult};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{spectrum, Spectrum, SymmetricKernel};

/// `ln p_{2n,2k}` for `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityTable {
    pub n: usize,
    pub log_p: Vec<f64>,
    /// `|Σ_k p_{2n,2k} - 1|`.
    pub normalization_residual: f64,
}

impl ProbabilityTable {
    /// Matrix size `N = 2n`.
    pub fn matrix_size(&self) -> usize {
        2 * self.n
    }

    /// `p_{2n,2k}` on the linear scale (may underflow to zero).
    pub fn p(&self, k: usize) -> f64 {
        self.log_p[k].exp()
    }

    /// `Σ_k z^k p_{2n,2k}`.
    pub fn polynomial(&self, z: f64) -> f64 {
        self.log_p.iter().rev().fold(0.0, |acc, lp| acc * z + lp.exp())
    }
}

fn check_below_one(eig: &Spectrum) -> Result<()> {
    match eig.lambdas.iter().find(|&&l| !(l < 1.0)) {
        Some(&l) => Err(Error::Domain {
            function: "log_prob_no_real",
            value: l,
            expected: "every eigenvalue below 1",
        }),
        None => Ok(()),
    }
}

/// `ln p_{2n,0} = Σ_i ln(1 - λ_i)`.
pub fn log_prob_no_real(eig: &Spectrum) -> Result<f64> {
    check_below_one(eig)?;
    Ok(eig.lambdas.iter().rev().map(|&l| (-l).ln_1p()).sum())
}

/// The full table `ln p_{2n,2k}`, `k = 0..=n`.
///
/// Needs every eigenvalue resolved inside `(0, 1)`; the factor-Jacobi
/// spectrum provides that up to the kernel's double-range limit.
pub fn prob_table(eig: &Spectrum) -> Result<ProbabilityTable> {
    check_below_one(eig)?;
    if let Some(&l) = eig.lambdas.iter().find(|&&l| !(l > 0.0)) {
        return Err(Error::Degenerate(format!(
            "eigenvalue {l:e} is not resolved as positive; the table needs relative accuracy \
             on the whole spectrum"
        )));
    }
    let log_p0 = log_prob_no_real(eig)?;
    // smallest first
    let nu: Vec<f64> = eig.lambdas.iter().rev().map(|&l| l / (1.0 - l)).collect();
    let log_p: Vec<f64> = elementary_symmetric(&nu)
        .iter()
        .map(|e| log_p0 + e.ln())
        .collect();
    let total: f64 = log_p.iter().map(|l| l.exp()).sum();
    Ok(ProbabilityTable {
        n: eig.n,
        log_p,
        normalization_residual: (total - 1.0).abs(),
    })
}

/// `det(I + (z-1) M_n)`, evaluated through the spectrum.
pub fn generating_function(kernel: &SymmetricKernel, z: f64) -> Result<f64> {
    Ok(generating_function_from(&spectrum(kernel)?, z))
}

pub fn generating_function_from(eig: &Spectrum, z: f64) -> f64 {
    if z == 1.0 {
        return 1.0;
    }
    eig.lambdas.iter().rev().map(|&l| 1.0 + (z - 1.0) * l).product()
}

/// Upper and lower bounds on `ln p_{2n,2k} - ln p_{2n,0}` from the
/// spectral and trace estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichCheck {
    pub n: usize,
    pub k: usize,
    pub value: f64,
    /// `k ln((sqrt(n/π)(1-ε) - k + 1) / (n - k + 1))`.
    pub lower: f64,
    /// `k ln(n² / μ)`.
    pub upper: f64,
}

impl SandwichCheck {
    pub fn holds(&self) -> bool {
        self.lower <= self.value && self.value <= self.upper
    }
}

pub fn sandwich_check(table: &ProbabilityTable, k: usize, eps: f64, mu: f64) -> Result<SandwichCheck> {
    let n = table.n;
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("k = {k} outside 1..={n}")));
    }
    let (nf, kf) = (n as f64, k as f64);
    let numer = (nf / std::f64::consts::PI).sqrt() * (1.0 - eps) - kf + 1.0;
    if !(numer > 0.0) {
        return Err(Error::Precondition(format!(
            "lower bound is vacuous for n = {n}, k = {k}, eps = {eps}"
        )));
    }
    Ok(SandwichCheck {
        n,
        k,
        value: table.log_p[k] - table.log_p[0],
        lower: kf * (numer / (nf - kf + 1.0)).ln(),
        upper: kf * (nf * nf / mu).ln(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{spectrum_via, EigenRoute};

    fn table(n: usize) -> ProbabilityTable {
        let k = SymmetricKernel::build(n).unwrap();
        prob_table(&spectrum(&k).unwrap()).unwrap()
    }

    #[test]
    fn one_by_one() {
        let t = table(1);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((t.p(0) - (1.0 - r)).abs() < 1e-15);
        assert!((t.p(1) - r).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_determinant() {
        let s2 = 2f64.sqrt();
        let expected = 9.0 / 8.0 - 11.0 / (8.0 * s2);
        let k = SymmetricKernel::build(2).unwrap();
        let lp = log_prob_no_real(&spectrum(&k).unwrap()).unwrap();
        assert!((lp.exp() - expected).abs() < 1e-15);
    }

    #[test]
    fn generating_function_edges() {
        let k = SymmetricKernel::build(6).unwrap();
        assert_eq!(generating_function(&k, 1.0).unwrap(), 1.0);
        let eig = spectrum(&k).unwrap();
        let g0 = generating_function(&k, 0.0).unwrap();
        assert!((g0 - log_prob_no_real(&eig).unwrap().exp()).abs() < 1e-15);
    }

    #[test]
    fn rejects_eigenvalue_at_one() {
        let eig = Spectrum {
            n: 2,
            lambdas: vec![1.0, 0.5],
            trace_check_residual: 0.0,
            frobenius_check_residual: 0.0,
            route: EigenRoute::Tridiagonal,
        };
        assert!(matches!(log_prob_no_real(&eig), Err(Error::Domain { .. })));
        assert!(prob_table(&eig).is_err());
    }

    #[test]
    fn table_needs_resolved_spectrum() {
        let k = SymmetricKernel::build(300).unwrap();
        let eig = spectrum_via(&k, EigenRoute::Tridiagonal).unwrap();
        assert!(!eig.is_resolved());
        assert!(matches!(prob_table(&eig), Err(Error::Degenerate(_))));
    }

    #[test]
    fn sandwich_precondition() {
        let t = table(4);
        assert!(sandwich_check(&t, 0, 0.1, 0.5).is_err());
        assert!(sandwich_check(&t, 3, 0.1, 0.5).is_err());
    }
}
