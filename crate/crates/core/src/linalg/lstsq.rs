use crate::error::{Error, Result};

/// Ordinary least squares `min ||X b - y||` by Householder QR.
///
/// `columns` holds the design matrix column by column. Returns the
/// coefficients; a column whose reflected diagonal falls below `1e-12`
/// of the largest is reported as rank deficient.
pub fn least_squares(columns: &[Vec<f64>], y: &[f64]) -> Result<Vec<f64>> {
    let p = columns.len();
    let m = y.len();
    if p == 0 || columns.iter().any(|c| c.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: columns.first().map_or(0, Vec::len),
        });
    }
    if m < p {
        return Err(Error::RankDeficient { column: m });
    }
    let mut r: Vec<Vec<f64>> = columns.to_vec();
    let mut rhs = y.to_vec();
    let mut diag = vec![0.0; p];
    let col_scale = r
        .iter()
        .map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0_f64, f64::max);

    for k in 0..p {
        let norm = r[k][k..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm <= 1e-12 * col_scale {
            return Err(Error::RankDeficient { column: k });
        }
        let alpha = if r[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = r[k][k..].to_vec();
        v[0] -= alpha;
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        diag[k] = alpha;
        let apply = |col: &mut [f64]| {
            let s: f64 = v.iter().zip(col.iter()).map(|(a, b)| a * b).sum::<f64>() * 2.0 / vtv;
            for (c, vi) in col.iter_mut().zip(&v) {
                *c -= s * vi;
            }
        };
        for j in k + 1..p {
            apply(&mut r[j][k..]);
        }
        apply(&mut rhs[k..]);
    }
    let mut b = vec![0.0; p];
    for k in (0..p).rev() {
        let mut acc = rhs[k];
        for j in k + 1..p {
            acc -= r[j][k] * b[j];
        }
        b[k] = acc / diag[k];
    }
    Ok(b)
}
