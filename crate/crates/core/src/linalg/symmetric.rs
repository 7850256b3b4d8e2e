//! Dense symmetric eigenvalues: Householder tridiagonalization followed by
//! implicit-shift QL on the tridiagonal.

use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 60;

/// Eigenvalues of the symmetric `n × n` matrix stored row-major in `a`,
/// in no particular order. Only the lower triangle of `a` is read; `a` is
/// overwritten.
pub fn symmetric_eigenvalues(a: &mut [f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let (mut diag, mut off) = tridiagonalize(a, n);
    tridiagonal_eigenvalues(&mut diag, &mut off)?;
    Ok(diag)
}

/// Reduces the lower triangle of `a` to tridiagonal form. Returns the
/// diagonal and the subdiagonal (length `n`, last entry zero).
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let start = k + 1;
        let m = n - start;
        // column k below the diagonal, read from the lower triangle
        let mut tail2 = 0.0;
        for i in 0..m {
            let x = a[(start + i) * n + k];
            v[i] = x;
            if i > 0 {
                tail2 += x * x;
            }
        }
        diag[k] = a[k * n + k];
        if tail2 == 0.0 {
            off[k] = v[0];
            continue;
        }
        let norm = (tail2 + v[0] * v[0]).sqrt();
        let alpha = if v[0] > 0.0 { -norm } else { norm };
        off[k] = alpha;
        v[0] -= alpha;
        let vtv = tail2 + v[0] * v[0];
        let beta = 2.0 / vtv;

        // p = beta * B v using the lower triangle of the trailing block B
        p[..m].iter_mut().for_each(|x| *x = 0.0);
        for i in 0..m {
            let row = &a[(start + i) * n + start..(start + i) * n + start + i + 1];
            let vi = v[i];
            let mut acc = 0.0;
            for j in 0..i {
                acc += row[j] * v[j];
                p[j] += row[j] * vi;
            }
            p[i] += acc + row[i] * vi;
        }
        let mut pv = 0.0;
        for i in 0..m {
            p[i] *= beta;
            pv += p[i] * v[i];
        }
        let half = 0.5 * beta * pv;
        for i in 0..m {
            p[i] -= half * v[i];
        }
        // B -= v w^T + w v^T on the lower triangle, w = p
        for i in 0..m {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut a[(start + i) * n + start..(start + i) * n + start + i + 1];
            for j in 0..=i {
                row[j] -= vi * p[j] + wi * v[j];
            }
        }
    }
    if n >= 2 {
        diag[n - 2] = a[(n - 2) * n + n - 2];
        off[n - 2] = a[(n - 1) * n + n - 2];
    }
    if n >= 1 {
        diag[n - 1] = a[(n - 1) * n + n - 1];
    }
    (diag, off)
}

/// Implicit QL with Wilkinson-type shifts. `diag` is replaced by the
/// eigenvalues; `off[i]` couples rows `i` and `i + 1`.
pub fn tridiagonal_eigenvalues(diag: &mut [f64], off: &mut [f64]) -> Result<()> {
    let n = diag.len();
    assert_eq!(off.len(), n);
    if n == 0 {
        return Ok(());
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence {
                    routine: "tridiagonal QL",
                    iterations: MAX_QL_ITERATIONS,
                });
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}
