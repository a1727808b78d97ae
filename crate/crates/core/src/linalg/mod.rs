//! Dense linear algebra used by every numerical routine: Hermitian
//! eigendecomposition, operator norms, Kronecker products and spectral
//! projections.

mod hermitian;
mod jacobi;
mod matrix;
mod tridiag;

pub use hermitian::{
    CutMode, Eigen, HermitianOperator, SpectralProjection, CUT_TOL, DEFAULT_KRON_CAP, HERMITIAN_TOL,
};
pub use matrix::CMatrix;

use crate::error::Result;

pub fn eig_hermitian(op: &HermitianOperator) -> Result<Eigen> {
    op.eig()
}

pub fn operator_norm(op: &HermitianOperator) -> Result<f64> {
    op.operator_norm()
}

pub fn min_eigenvalue(op: &HermitianOperator) -> Result<f64> {
    op.min_eigenvalue()
}

pub fn kron(a: &HermitianOperator, b: &HermitianOperator) -> Result<HermitianOperator> {
    a.kron(b)
}

pub fn spectral_projection(op: &HermitianOperator, delta: f64, mode: CutMode) -> Result<SpectralProjection> {
    op.spectral_projection(delta, mode)
}
