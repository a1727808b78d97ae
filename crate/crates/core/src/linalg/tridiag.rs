//! Eigenvalues of large real symmetric matrices: Householder reduction to
//! tridiagonal form followed by implicit QL iterations with Wilkinson shifts.
//! Eigenvectors are not accumulated.

use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 60;

/// Ascending eigenvalues of a real symmetric `n×n` row-major matrix.
pub(crate) fn symmetric_eigenvalues(n: usize, matrix: &[f64]) -> Result<Vec<f64>> {
    debug_assert_eq!(matrix.len(), n * n);
    let mut a = matrix.to_vec();
    let (mut d, mut e) = tridiagonalize(n, &mut a);
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Reduces `a` in place; returns the diagonal and the sub-diagonal
/// (`e[i]` couples `d[i]` and `d[i+1]`, `e[n-1] = 0`).
fn tridiagonalize(n: usize, a: &mut [f64]) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    if n == 0 {
        return (d, e);
    }
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let m = k + 1;
        let alpha_sq: f64 = (m..n).map(|i| a[i * n + k] * a[i * n + k]).sum();
        d[k] = a[k * n + k];
        if alpha_sq == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = a[m * n + k];
        let alpha = if x0 >= 0.0 { -alpha_sq.sqrt() } else { alpha_sq.sqrt() };
        e[k] = alpha;
        for i in m..n {
            v[i] = a[i * n + k];
        }
        v[m] -= alpha;
        let vtv: f64 = (m..n).map(|i| v[i] * v[i]).sum();
        if vtv == 0.0 {
            continue;
        }
        let beta = 2.0 / vtv;
        // p = beta * A22 v
        for i in m..n {
            let row = &a[i * n + m..i * n + n];
            let dot: f64 = row.iter().zip(&v[m..n]).map(|(x, y)| x * y).sum();
            w[i] = beta * dot;
        }
        let kappa = 0.5 * beta * (m..n).map(|i| v[i] * w[i]).sum::<f64>();
        for i in m..n {
            w[i] -= kappa * v[i];
        }
        // A22 -= v w^T + w v^T
        for i in m..n {
            let (vi, wi) = (v[i], w[i]);
            let row = &mut a[i * n + m..i * n + n];
            for ((x, &vj), &wj) in row.iter_mut().zip(&v[m..n]).zip(&w[m..n]) {
                *x -= vi * wj + wi * vj;
            }
        }
    }
    if n >= 2 {
        d[n - 2] = a[(n - 2) * n + n - 2];
        e[n - 2] = a[(n - 1) * n + n - 2];
    }
    d[n - 1] = a[(n - 1) * n + n - 1];
    e[n - 1] = 0.0;
    (d, e)
}

fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    // Off-diagonals below eps·‖T‖ are dropped. A purely relative test never
    // deflates clusters of eigenvalues at zero, which adjacency matrices of
    // Cayley graphs produce in bulk.
    let norm = (0..n)
        .map(|i| d[i].abs() + e[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 })
        .fold(0.0, f64::max);
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd.max(norm) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iterations == MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence { iterations });
            }
            iterations += 1;

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
