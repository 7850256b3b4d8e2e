use crate::error::{Error, Result};

/// `(sign, ln |det a|)` by Gaussian elimination with partial pivoting.
/// `a` is row-major `n × n` and is overwritten by its LU factors.
pub fn log_abs_determinant(a: &mut [f64], n: usize) -> Result<(f64, f64)> {
    assert_eq!(a.len(), n * n);
    let mut sign = 1.0;
    let mut log_abs = 0.0;
    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
            .unwrap();
        let pivot = a[pivot_row * n + k];
        if pivot == 0.0 {
            return Err(Error::Degenerate(format!("singular matrix at column {k}")));
        }
        if pivot_row != k {
            for j in 0..n {
                a.swap(k * n + j, pivot_row * n + j);
            }
            sign = -sign;
        }
        if pivot < 0.0 {
            sign = -sign;
        }
        log_abs += pivot.abs().ln();
        for i in k + 1..n {
            let factor = a[i * n + k] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in k + 1..n {
                a[i * n + j] -= factor * a[k * n + j];
            }
        }
    }
    Ok((sign, log_abs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_sign() {
        let mut a = vec![0.0, 2.0, 3.0, 0.0];
        let (sign, l) = log_abs_determinant(&mut a, 2).unwrap();
        assert_eq!(sign, -1.0);
        assert!((l - 6f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn singular() {
        let mut a = vec![1.0, 2.0, 2.0, 4.0];
        assert!(log_abs_determinant(&mut a, 2).is_err());
    }
}
