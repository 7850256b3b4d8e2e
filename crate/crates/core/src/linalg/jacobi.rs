//! One-sided (Hestenes) Jacobi on an explicit factor.
//!
//! For `M = X^T X` this returns the eigenvalues of `M` as squared column
//! norms of the orthogonalized `X`. Unlike reducing `M` itself, it keeps
//! relative accuracy on eigenvalues far below `eps · λ_max` when the
//! columns of `X` are accurate, which is what the Gamma-ratio kernel needs.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;
const ORTHOGONALITY_TOL: f64 = 1e-15;

/// Squared singular values of the matrix whose columns are `columns`,
/// in no particular order.
pub fn squared_singular_values(mut columns: Vec<Vec<f64>>) -> Result<Vec<f64>> {
    let k = columns.len();
    let len = columns.first().map_or(0, Vec::len);
    let tol = ORTHOGONALITY_TOL.max((len as f64).sqrt() * f64::EPSILON);
    let mut norms: Vec<f64> = columns.iter().map(|c| dot(c, c)).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k.saturating_sub(1) {
            let (left, right) = columns.split_at_mut(p + 1);
            let xp = &mut left[p];
            for (offset, xq) in right.iter_mut().enumerate() {
                let q = p + 1 + offset;
                let (a, b) = (norms[p], norms[q]);
                if a == 0.0 || b == 0.0 {
                    continue;
                }
                let c = dot(xp, xq);
                // sqrt separately: a b can underflow for graded columns
                if c == 0.0 || c.abs() <= tol * a.sqrt() * b.sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (b - a) / (2.0 * c);
                let t = 1.0_f64.copysign(zeta) / (zeta.abs() + zeta.hypot(1.0));
                let cs = 1.0 / t.hypot(1.0);
                let sn = cs * t;
                let (mut na, mut nb) = (0.0, 0.0);
                for (u, w) in xp.iter_mut().zip(xq.iter_mut()) {
                    let (x, y) = (*u, *w);
                    *u = cs * x - sn * y;
                    *w = sn * x + cs * y;
                    na += *u * *u;
                    nb += *w * *w;
                }
                norms[p] = na;
                norms[q] = nb;
            }
        }
        if !rotated {
            return Ok(columns.iter().map(|c| norm_squared(c)).collect());
        }
    }
    Err(Error::NoConvergence {
        routine: "one-sided Jacobi",
        iterations: MAX_SWEEPS,
    })
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    let mut acc = [0.0; 4];
    let (xc, yc) = (x.chunks_exact(4), y.chunks_exact(4));
    let tail: f64 = xc.remainder().iter().zip(yc.remainder()).map(|(a, b)| a * b).sum();
    for (a, b) in xc.zip(yc) {
        for i in 0..4 {
            acc[i] += a[i] * b[i];
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// `Σ x_i²` with scaling so tiny columns do not flush to zero early.
fn norm_squared(x: &[f64]) -> f64 {
    let scale = max_abs(x);
    if scale == 0.0 {
        return 0.0;
    }
    let s: f64 = x.iter().map(|v| (v / scale) * (v / scale)).sum();
    scale * scale * s
}
