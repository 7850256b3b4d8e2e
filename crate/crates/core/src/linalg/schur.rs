//! Real Schur form of a general square matrix: Householder reduction to
//! upper Hessenberg form, then Francis double-shift QR.
//!
//! Only the diagonal block structure is kept. A converged `1 × 1` block is
//! a real eigenvalue; a converged `2 × 2` block is split into two real
//! eigenvalues only when its discriminant clears `tau` times the block's
//! squared Frobenius norm, otherwise it is a complex-conjugate pair.

use crate::error::{Error, Result};

/// Total iteration budget is this times `n`, shared across eigenvalues.
const ITERATIONS_PER_ROW: usize = 30;

/// Default borderline threshold for `2 × 2` blocks.
pub const DEFAULT_BLOCK_TAU: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SchurEigenvalues {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    /// Eigenvalues resolved as real, from `1 × 1` blocks and split `2 × 2`
    /// blocks.
    pub real_count: usize,
}

/// Reduces `a` (row-major, `n × n`) to upper Hessenberg form in place.
pub fn hessenberg(a: &mut [f64], n: usize) {
    assert_eq!(a.len(), n * n);
    let mut v = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let start = k + 1;
        let m = n - start;
        let mut tail2 = 0.0;
        for i in 0..m {
            v[i] = a[(start + i) * n + k];
            if i > 0 {
                tail2 += v[i] * v[i];
            }
        }
        if tail2 == 0.0 {
            continue;
        }
        let norm = (tail2 + v[0] * v[0]).sqrt();
        let alpha = if v[0] > 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let beta = 2.0 / (tail2 + v[0] * v[0]);

        // left: rows start.., columns k..
        for j in k..n {
            let mut s = 0.0;
            for i in 0..m {
                s += v[i] * a[(start + i) * n + j];
            }
            s *= beta;
            for i in 0..m {
                a[(start + i) * n + j] -= s * v[i];
            }
        }
        // right: all rows, columns start..
        for i in 0..n {
            let row = &mut a[i * n + start..i * n + n];
            let mut s = 0.0;
            for j in 0..m {
                s += row[j] * v[j];
            }
            s *= beta;
            for j in 0..m {
                row[j] -= s * v[j];
            }
        }
        a[start * n + k] = alpha;
        for i in 1..m {
            a[(start + i) * n + k] = 0.0;
        }
    }
}

/// Eigenvalues of `a` through the real Schur block structure. `a` is
/// destroyed.
pub fn real_schur_eigenvalues(a: &mut [f64], n: usize, tau: f64) -> Result<SchurEigenvalues> {
    hessenberg(a, n);
    hessenberg_qr(a, n, tau)
}

/// Francis double-shift QR on an upper Hessenberg matrix (eigenvalues only).
fn hessenberg_qr(a: &mut [f64], n: usize, tau: f64) -> Result<SchurEigenvalues> {
    let mut wr = vec![0.0; n];
    let mut wi = vec![0.0; n];
    let mut real_count = 0;
    if n == 0 {
        return Ok(SchurEigenvalues { re: wr, im: wi, real_count });
    }
    // 1-based view
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);

    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += a[idx(i, j)].abs();
        }
    }

    let mut nn = n;
    let mut t = 0.0;
    let mut budget = ITERATIONS_PER_ROW * n;
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 2 {
                let mut s = a[idx(l - 1, l - 1)].abs() + a[idx(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[idx(l, l - 1)].abs() + s == s {
                    a[idx(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[idx(nn, nn)];
            if l == nn {
                wr[nn - 1] = x + t;
                wi[nn - 1] = 0.0;
                real_count += 1;
                nn -= 1;
                break;
            }
            let mut y = a[idx(nn - 1, nn - 1)];
            let mut w = a[idx(nn, nn - 1)] * a[idx(nn - 1, nn)];
            if l == nn - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let (xb, yb) = (x + t, y + t);
                let scale = xb * xb
                    + yb * yb
                    + a[idx(nn, nn - 1)].powi(2)
                    + a[idx(nn - 1, nn)].powi(2);
                let z = q.abs().sqrt();
                x += t;
                if q > tau * scale {
                    let z = p + z.copysign(p);
                    wr[nn - 2] = x + z;
                    wr[nn - 1] = if z != 0.0 { x - w / z } else { x + z };
                    wi[nn - 2] = 0.0;
                    wi[nn - 1] = 0.0;
                    real_count += 2;
                } else {
                    wr[nn - 2] = x + p;
                    wr[nn - 1] = x + p;
                    let zi = if q < 0.0 { z } else { 0.0 };
                    wi[nn - 2] = zi;
                    wi[nn - 1] = -zi;
                }
                nn -= 2;
                break;
            }
            if budget == 0 {
                return Err(Error::NoConvergence {
                    routine: "Hessenberg QR",
                    iterations: ITERATIONS_PER_ROW * n,
                });
            }
            budget -= 1;
            if its > 0 && its % 10 == 0 {
                // exceptional shift
                t += x;
                for i in 1..=nn {
                    a[idx(i, i)] -= x;
                }
                let s = a[idx(nn, nn - 1)].abs() + a[idx(nn - 1, nn - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            let (mut p, mut q, mut r);
            let mut m = nn - 2;
            loop {
                let z = a[idx(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[idx(m + 1, m)] + a[idx(m, m + 1)];
                q = a[idx(m + 1, m + 1)] - z - rr - ss;
                r = a[idx(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[idx(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[idx(m - 1, m - 1)].abs() + z.abs() + a[idx(m + 1, m + 1)].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a[idx(i, i - 2)] = 0.0;
                if i != m + 2 {
                    a[idx(i, i - 3)] = 0.0;
                }
            }
            let mut k = m;
            while k + 1 <= nn {
                let mut xk = 0.0;
                if k != m {
                    p = a[idx(k, k - 1)];
                    q = a[idx(k + 1, k - 1)];
                    r = if k != nn - 1 { a[idx(k + 2, k - 1)] } else { 0.0 };
                    xk = p.abs() + q.abs() + r.abs();
                    if xk != 0.0 {
                        p /= xk;
                        q /= xk;
                        r /= xk;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[idx(k, k - 1)] = -a[idx(k, k - 1)];
                        }
                    } else {
                        a[idx(k, k - 1)] = -s * xk;
                    }
                    p += s;
                    let xx = p / s;
                    let yy = q / s;
                    let zz = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let mut pj = a[idx(k, j)] + q * a[idx(k + 1, j)];
                        if k != nn - 1 {
                            pj += r * a[idx(k + 2, j)];
                            a[idx(k + 2, j)] -= pj * zz;
                        }
                        a[idx(k + 1, j)] -= pj * yy;
                        a[idx(k, j)] -= pj * xx;
                    }
                    let mmin = nn.min(k + 3);
                    for i in l..=mmin {
                        let mut pi = xx * a[idx(i, k)] + yy * a[idx(i, k + 1)];
                        if k != nn - 1 {
                            pi += zz * a[idx(i, k + 2)];
                            a[idx(i, k + 2)] -= pi * r;
                        }
                        a[idx(i, k + 1)] -= pi * q;
                        a[idx(i, k)] -= pi;
                    }
                }
                k += 1;
            }
            if l >= nn - 1 {
                break;
            }
        }
    }
    Ok(SchurEigenvalues { re: wr, im: wi, real_count })
}
