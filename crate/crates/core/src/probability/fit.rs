//! Least-squares fit of `ln p_{N,0}` against `sqrt(N)`.

use serde::{Deserialize, Serialize};

use super::log_prob_no_real;
use crate::error::{Error, Result};
use crate::kernel::{spectrum, SymmetricKernel};
use crate::linalg::least_squares;
use crate::specfun::Constants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    /// `b1 sqrt(N) + b2`
    TwoTerm,
    /// `b1 sqrt(N) + b2 + b3 / sqrt(N)`
    ThreeTerm,
}

impl FitModel {
    fn basis(self, size: usize) -> Vec<f64> {
        let r = (size as f64).sqrt();
        match self {
            FitModel::TwoTerm => vec![r, 1.0],
            FitModel::ThreeTerm => vec![r, 1.0, 1.0 / r],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: FitModel,
    pub b1: f64,
    pub b2: f64,
    pub b3: Option<f64>,
    pub rms_residual: f64,
    /// Smallest and largest matrix size `N` in the fit.
    pub n_range: (usize, usize),
}

impl FitResult {
    pub fn predict(&self, size: usize) -> f64 {
        let r = (size as f64).sqrt();
        self.b1 * r + self.b2 + self.b3.map_or(0.0, |b| b / r)
    }
}

pub const MIN_FIT_POINTS: usize = 10;

/// Fits `(N, ln p_{N,0})` pairs. Needs at least ten points, even `N`,
/// finite values.
pub fn fit_asymptote(points: &[(usize, f64)], model: FitModel) -> Result<FitResult> {
    if points.len() < MIN_FIT_POINTS {
        return Err(Error::Precondition(format!(
            "need at least {MIN_FIT_POINTS} points, got {}",
            points.len()
        )));
    }
    if let Some(&(size, _)) = points.iter().find(|(s, _)| *s == 0 || s % 2 != 0) {
        return Err(Error::Precondition(format!("matrix size {size} is not a positive even integer")));
    }
    if let Some(&(size, v)) = points.iter().find(|(_, v)| !v.is_finite()) {
        return Err(Error::Precondition(format!("ln p at N = {size} is not finite ({v})")));
    }
    let width = model.basis(2).len();
    let mut columns = vec![Vec::with_capacity(points.len()); width];
    for &(size, _) in points {
        for (col, v) in columns.iter_mut().zip(model.basis(size)) {
            col.push(v);
        }
    }
    let y: Vec<f64> = points.iter().map(|p| p.1).collect();
    let coeffs = least_squares(&columns, &y)?;
    let mut result = FitResult {
        model,
        b1: coeffs[0],
        b2: coeffs[1],
        b3: coeffs.get(2).copied(),
        rms_residual: 0.0,
        n_range: (
            points.iter().map(|p| p.0).min().unwrap(),
            points.iter().map(|p| p.0).max().unwrap(),
        ),
    };
    let ss: f64 = points
        .iter()
        .map(|&(size, v)| (v - result.predict(size)).powi(2))
        .sum();
    result.rms_residual = (ss / points.len() as f64).sqrt();
    Ok(result)
}

/// `(N, ln p_{N,0})` for each even `N`, computed from leading blocks of a
/// single kernel.
pub fn log_p0_series(sizes: &[usize]) -> Result<Vec<(usize, f64)>> {
    if let Some(&s) = sizes.iter().find(|&&s| s == 0 || s % 2 != 0) {
        return Err(Error::Precondition(format!("matrix size {s} is not a positive even integer")));
    }
    let Some(&largest) = sizes.iter().max() else {
        return Ok(Vec::new());
    };
    let full = SymmetricKernel::build(largest / 2)?;
    sizes
        .iter()
        .map(|&size| {
            let eig = spectrum(&full.leading(size / 2)?)?;
            Ok((size, log_prob_no_real(&eig)?))
        })
        .collect()
}

/// `-ζ(3/2) / sqrt(2π)`.
pub fn rate_constant() -> f64 {
    -Constants::compute().rate
}
