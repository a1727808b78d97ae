use std::ops::{Add, Sub};

use num_complex::Complex64;
use serde::Serialize;

use super::jacobi::jacobi_eigen;
use super::tridiag::symmetric_eigenvalues;
use super::CMatrix;
use crate::error::{Error, Result};

/// Entries must be Hermitian to this tolerance (relative to `1 + max|a|`) at
/// construction time.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Distance below which a spectral cut is considered to touch an eigenvalue.
pub const CUT_TOL: f64 = 1e-8;
/// Default cap on the dimension of a Kronecker product.
pub const DEFAULT_KRON_CAP: usize = 20_736;
/// Above this size eigenvalue-only requests use tridiagonal QL instead of Jacobi.
const JACOBI_EIGENVALUE_MAX_DIM: usize = 48;

/// Dense Hermitian operator. Real operators keep no imaginary buffer.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    re: Vec<f64>,
    im: Option<Vec<f64>>,
}

/// Eigen-decomposition `op = V diag(values) V*`, values ascending.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors.
    pub vectors: CMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutMode {
    AtMost,
    GreaterThan,
}

/// Orthogonal projection onto the eigenspaces of an operator on one side of a
/// threshold.
#[derive(Clone, Debug)]
pub struct SpectralProjection {
    pub threshold: f64,
    pub mode: CutMode,
    pub rank: usize,
    pub matrix: CMatrix,
}

impl HermitianOperator {
    pub fn zeros(dim: usize) -> Self {
        HermitianOperator {
            dim,
            re: vec![0.0; dim * dim],
            im: None,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::real_diagonal(&vec![1.0; dim])
    }

    pub fn real_diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut op = Self::zeros(dim);
        for (i, &x) in diag.iter().enumerate() {
            op.re[i * dim + i] = x;
        }
        op
    }

    /// Wraps a real symmetric row-major matrix. The stored form is the exact
    /// symmetrization `(A + Aᵀ)/2`.
    pub fn from_real_symmetric(dim: usize, mut data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: data.len(),
            });
        }
        let scale = 1.0 + data.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for r in 0..dim {
            for c in r..dim {
                let (x, y) = (data[r * dim + c], data[c * dim + r]);
                if !x.is_finite() || !y.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
                let dev = (x - y).abs();
                if dev > HERMITIAN_TOL * scale {
                    return Err(Error::NotHermitian {
                        row: r,
                        col: c,
                        deviation: dev,
                    });
                }
                let avg = 0.5 * (x + y);
                data[r * dim + c] = avg;
                data[c * dim + r] = avg;
            }
        }
        Ok(HermitianOperator {
            dim,
            re: data,
            im: None,
        })
    }

    pub fn from_matrix(m: &CMatrix) -> Result<Self> {
        let dim = m.dim();
        let scale = 1.0 + m.max_abs();
        let mut re = vec![0.0; dim * dim];
        let mut im = vec![0.0; dim * dim];
        for r in 0..dim {
            for c in r..dim {
                let (x, y) = (m.get(r, c), m.get(c, r));
                if !(x.re.is_finite() && x.im.is_finite() && y.re.is_finite() && y.im.is_finite()) {
                    return Err(Error::NonFinite { row: r, col: c });
                }
                let dev = (x - y.conj()).norm();
                if dev > HERMITIAN_TOL * scale {
                    return Err(Error::NotHermitian {
                        row: r,
                        col: c,
                        deviation: dev,
                    });
                }
                let avg = 0.5 * (x + y.conj());
                re[r * dim + c] = avg.re;
                re[c * dim + r] = avg.re;
                im[r * dim + c] = avg.im;
                im[c * dim + r] = -avg.im;
            }
        }
        let im = if im.iter().all(|&x| x == 0.0) { None } else { Some(im) };
        Ok(HermitianOperator { dim, re, im })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_real(&self) -> bool {
        self.im.is_none()
    }

    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        let k = r * self.dim + c;
        Complex64::new(self.re[k], self.im.as_ref().map_or(0.0, |im| im[k]))
    }

    /// Row-major real part.
    pub fn real_part(&self) -> &[f64] {
        &self.re
    }

    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.dim, |r, c| self.entry(r, c))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.re[i * self.dim + i]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        HermitianOperator {
            dim: self.dim,
            re: self.re.iter().map(|x| x * s).collect(),
            im: self.im.as_ref().map(|im| im.iter().map(|x| x * s).collect()),
        }
    }

    /// `self + c·I`.
    pub fn shift(&self, c: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.re[i * self.dim + i] += c;
        }
        out
    }

    /// Jordan product `ab + ba`, which is Hermitian for Hermitian `a`, `b`.
    pub fn anticommutator(a: &Self, b: &Self) -> Result<Self> {
        let (ma, mb) = (a.to_matrix(), b.to_matrix());
        Self::from_matrix(&(&(&ma * &mb) + &(&mb * &ma)))
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.kron_with_cap(other, DEFAULT_KRON_CAP)
    }

    pub fn kron_with_cap(&self, other: &Self, cap: usize) -> Result<Self> {
        let requested = self.dim.saturating_mul(other.dim);
        if requested > cap {
            return Err(Error::DimensionCap { requested, cap });
        }
        if self.is_real() && other.is_real() {
            let (na, nb) = (self.dim, other.dim);
            let n = requested;
            let mut re = vec![0.0; n * n];
            for i1 in 0..na {
                for j1 in 0..na {
                    let a = self.re[i1 * na + j1];
                    if a == 0.0 {
                        continue;
                    }
                    for i2 in 0..nb {
                        let row = (i1 * nb + i2) * n + j1 * nb;
                        let src = &other.re[i2 * nb..(i2 + 1) * nb];
                        for (d, &b) in re[row..row + nb].iter_mut().zip(src) {
                            *d = a * b;
                        }
                    }
                }
            }
            return Ok(HermitianOperator { dim: n, re, im: None });
        }
        Self::from_matrix(&self.to_matrix().kron(&other.to_matrix()))
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.dim;
        match &self.im {
            None if n <= JACOBI_EIGENVALUE_MAX_DIM => Ok(jacobi_eigen(n, &self.re)?.0),
            None => symmetric_eigenvalues(n, &self.re),
            Some(_) => {
                let emb = self.real_embedding();
                let doubled = if 2 * n <= JACOBI_EIGENVALUE_MAX_DIM {
                    jacobi_eigen(2 * n, &emb)?.0
                } else {
                    symmetric_eigenvalues(2 * n, &emb)?
                };
                Ok(doubled.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
            }
        }
    }

    pub fn eig(&self) -> Result<Eigen> {
        let n = self.dim;
        if self.im.is_none() {
            let (values, vecs) = jacobi_eigen(n, &self.re)?;
            let vectors = CMatrix::from_real(n, &vecs)?;
            return Ok(Eigen { values, vectors });
        }
        let (values2, vecs2) = jacobi_eigen(2 * n, &self.real_embedding())?;
        Ok(self.extract_complex_eigen(&values2, &vecs2))
    }

    pub fn operator_norm(&self) -> Result<f64> {
        let vals = self.eigenvalues()?;
        Ok(vals.iter().fold(0.0f64, |m, x| m.max(x.abs())))
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.first().copied().unwrap_or(0.0))
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.last().copied().unwrap_or(0.0))
    }

    pub fn spectral_projection(&self, threshold: f64, mode: CutMode) -> Result<SpectralProjection> {
        let eig = self.eig()?;
        if let Some((&ev, dist)) = eig
            .values
            .iter()
            .map(|v| (v, (v - threshold).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
        {
            if dist < CUT_TOL {
                return Err(Error::AmbiguousCut {
                    threshold,
                    eigenvalue: ev,
                    distance: dist,
                });
            }
        }
        let n = self.dim;
        let mut below = CMatrix::zeros(n);
        let mut rank_below = 0;
        for (k, &v) in eig.values.iter().enumerate() {
            if v > threshold {
                continue;
            }
            rank_below += 1;
            for r in 0..n {
                let vr = eig.vectors.get(r, k);
                for c in 0..n {
                    let cur = below.get(r, c);
                    below.set(r, c, cur + vr * eig.vectors.get(c, k).conj());
                }
            }
        }
        let (matrix, rank) = match mode {
            CutMode::AtMost => (below, rank_below),
            CutMode::GreaterThan => (&CMatrix::identity(n) - &below, n - rank_below),
        };
        Ok(SpectralProjection {
            threshold,
            mode,
            rank,
            matrix,
        })
    }

    /// `[[A, -B], [B, A]]` for `A + iB`.
    fn real_embedding(&self) -> Vec<f64> {
        let n = self.dim;
        let m = 2 * n;
        let zero = vec![0.0; n * n];
        let im = self.im.as_deref().unwrap_or(&zero);
        let mut out = vec![0.0; m * m];
        for r in 0..n {
            for c in 0..n {
                let (a, b) = (self.re[r * n + c], im[r * n + c]);
                out[r * m + c] = a;
                out[(r + n) * m + c + n] = a;
                out[r * m + c + n] = -b;
                out[(r + n) * m + c] = b;
            }
        }
        out
    }

    /// Recovers `n` orthonormal complex eigenvectors from the `2n` real
    /// eigenvectors of the real embedding. Every eigenvalue appears twice in
    /// the embedding; each cluster of `2k` real vectors spans a `k`-dimensional
    /// complex eigenspace, from which `k` vectors are chosen by pivoted
    /// Gram-Schmidt.
    fn extract_complex_eigen(&self, values2: &[f64], vecs2: &[f64]) -> Eigen {
        let n = self.dim;
        let m = 2 * n;
        let scale = 1.0 + values2.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let cluster_tol = 1e-10 * scale;

        let column = |k: usize| -> Vec<Complex64> {
            (0..n)
                .map(|r| Complex64::new(vecs2[r * m + k], vecs2[(r + n) * m + k]))
                .collect()
        };

        let mut accepted: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        let mut start = 0;
        while start < m {
            let mut end = start + 1;
            while end < m && values2[end] - values2[end - 1] <= cluster_tol {
                end += 1;
            }
            let want = (end - start).div_ceil(2);
            let mut candidates: Vec<Vec<Complex64>> = (start..end).map(column).collect();
            for _ in 0..want {
                if accepted.len() == n {
                    break;
                }
                for cand in candidates.iter_mut() {
                    project_out(cand, &accepted);
                }
                let (best, _) = candidates
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (i, norm(v)))
                    .max_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("non-empty cluster");
                let mut v = candidates.swap_remove(best);
                let nv = norm(&v);
                v.iter_mut().for_each(|x| *x /= nv);
                accepted.push(v);
            }
            start = end;
        }

        let op = self.to_matrix();
        let mut pairs: Vec<(f64, Vec<Complex64>)> = accepted
            .into_iter()
            .map(|v| {
                let mut rq = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    let mut av = Complex64::new(0.0, 0.0);
                    for c in 0..n {
                        av += op.get(r, c) * v[c];
                    }
                    rq += v[r].conj() * av;
                }
                (rq.re, v)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let values = pairs.iter().map(|p| p.0).collect();
        let vectors = CMatrix::from_fn(n, |r, c| pairs[c].1[r]);
        Eigen { values, vectors }
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn project_out(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for b in basis {
        let coef: Complex64 = b.iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum();
        for (x, y) in v.iter_mut().zip(b) {
            *x -= coef * y;
        }
    }
}

impl<'a> Add<&'a HermitianOperator> for &'a HermitianOperator {
    type Output = HermitianOperator;

    fn add(self, rhs: &'a HermitianOperator) -> HermitianOperator {
        combine(self, rhs, 1.0)
    }
}

impl<'a> Sub<&'a HermitianOperator> for &'a HermitianOperator {
    type Output = HermitianOperator;

    fn sub(self, rhs: &'a HermitianOperator) -> HermitianOperator {
        combine(self, rhs, -1.0)
    }
}

fn combine(a: &HermitianOperator, b: &HermitianOperator, sign: f64) -> HermitianOperator {
    assert_eq!(a.dim, b.dim, "dimension mismatch");
    let re = a.re.iter().zip(&b.re).map(|(x, y)| x + sign * y).collect();
    let im = match (&a.im, &b.im) {
        (None, None) => None,
        (x, y) => {
            let len = a.dim * a.dim;
            let get = |v: &Option<Vec<f64>>, k: usize| v.as_ref().map_or(0.0, |v| v[k]);
            let im: Vec<f64> = (0..len).map(|k| get(x, k) + sign * get(y, k)).collect();
            if im.iter().all(|&v| v == 0.0) {
                None
            } else {
                Some(im)
            }
        }
    };
    HermitianOperator { dim: a.dim, re, im }
}

impl SpectralProjection {
    /// Max-entry deviation of `P² - P` and `P* - P`.
    pub fn idempotency_defect(&self) -> f64 {
        let p = &self.matrix;
        (&(p * p) - p).max_abs().max(p.adjoint().max_abs_diff(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_finite_and_non_hermitian() {
        assert!(matches!(
            HermitianOperator::from_real_symmetric(2, vec![1.0, f64::NAN, f64::NAN, 1.0]),
            Err(Error::NonFinite { .. })
        ));
        assert!(matches!(
            HermitianOperator::from_real_symmetric(2, vec![1.0, 2.0, 3.0, 1.0]),
            Err(Error::NotHermitian { .. })
        ));
        let m = CMatrix::from_data(2, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(1.0, 0.0)]).unwrap();
        assert!(HermitianOperator::from_matrix(&m).is_err());
    }

    #[test]
    fn complex_eigen_reconstructs() {
        // Pauli-Y has eigenvalues ±1 with complex eigenvectors.
        let m = CMatrix::from_data(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let op = HermitianOperator::from_matrix(&m).unwrap();
        let eig = op.eig().unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-12 && (eig.values[1] - 1.0).abs() < 1e-12);
        let lam = CMatrix::diagonal(&eig.values.iter().map(|&v| c(v, 0.0)).collect::<Vec<_>>());
        let rec = &(&eig.vectors * &lam) * &eig.vectors.adjoint();
        assert!(rec.max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn degenerate_complex_spectrum() {
        // diag(1,1,2) conjugated by a complex unitary keeps a degenerate pair.
        let u = CMatrix::from_data(
            3,
            vec![
                c(0.5, 0.5),
                c(0.5, -0.5),
                c(0.0, 0.0),
                c(0.5, -0.5),
                c(0.5, 0.5),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 1.0),
            ],
        )
        .unwrap();
        assert!(u.is_unitary(1e-14));
        let d = CMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        let m = &(&u * &d) * &u.adjoint();
        let op = HermitianOperator::from_matrix(&m).unwrap();
        let eig = op.eig().unwrap();
        assert!(eig.vectors.is_unitary(1e-10));
        assert!((eig.values[0] - 1.0).abs() < 1e-12);
        assert!((eig.values[2] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ambiguous_cut_is_rejected() {
        let op = HermitianOperator::real_diagonal(&[0.0, 4.0]);
        assert!(matches!(
            op.spectral_projection(4.0 + 1e-10, CutMode::AtMost),
            Err(Error::AmbiguousCut { .. })
        ));
    }

    #[test]
    fn kron_cap_enforced() {
        let a = HermitianOperator::identity(28);
        let b = HermitianOperator::identity(28 * 28);
        assert!(matches!(a.kron(&b), Err(Error::DimensionCap { requested: 21952, .. })));
    }
}
