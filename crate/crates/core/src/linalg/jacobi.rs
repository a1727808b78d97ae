//! Cyclic Jacobi eigensolver for dense real symmetric matrices.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
/// Sweeps stop once the off-diagonal Frobenius mass drops below this
/// fraction of the full Frobenius norm.
const OFF_DIAGONAL_RTOL: f64 = 1e-13;

/// Eigen-decomposition of a real symmetric `n×n` row-major matrix.
///
/// Returns the eigenvalues in ascending order together with the matrix of
/// eigenvectors (row-major, eigenvectors in columns, same ordering).
pub(crate) fn jacobi_eigen(n: usize, matrix: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    debug_assert_eq!(matrix.len(), n * n);
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = OFF_DIAGONAL_RTOL * frob;

    let mut converged = frob == 0.0 || n < 2;
    let mut sweeps = 0;
    while !converged {
        if off_diagonal_norm(n, &a) <= target {
            converged = true;
            continue;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { iterations: sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(n, &mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + new_col] = v[r * n + old_col];
        }
    }
    Ok((values, vectors))
}

fn off_diagonal_norm(n: usize, a: &[f64]) -> f64 {
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[r * n + c] * a[r * n + c];
            }
        }
    }
    s.sqrt()
}

fn rotate(n: usize, a: &mut [f64], v: &mut [f64], p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp;
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq;
    }
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_closed_form() {
        let (vals, _) = jacobi_eigen(2, &[2.0, 2.0, 2.0, -2.0]).unwrap();
        let r = 8f64.sqrt();
        assert!((vals[0] + r).abs() < 1e-14);
        assert!((vals[1] - r).abs() < 1e-14);
    }

    #[test]
    fn diagonal_input_is_untouched() {
        let (vals, vecs) = jacobi_eigen(2, &[0.0, 0.0, 0.0, 4.0]).unwrap();
        assert_eq!(vals, vec![0.0, 4.0]);
        assert_eq!(vecs, vec![1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn equal_diagonal_rotation() {
        // theta == 0 branch: [[1, 1], [1, 1]] -> {0, 2}.
        let (vals, _) = jacobi_eigen(2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(vals[0].abs() < 1e-15 && (vals[1] - 2.0).abs() < 1e-15);
    }
}
