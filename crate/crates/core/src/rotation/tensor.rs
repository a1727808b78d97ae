use serde::Serialize;

use super::RotationRep;
use crate::error::{Error, Result};
use crate::linalg::{HermitianOperator, DEFAULT_KRON_CAP};

/// Single-site factor of a tensor monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Site {
    I,
    X,
    Y,
    /// The scalar `Z_θ`.
    Z,
    /// `XY + YX` on one site.
    XYSym,
}

/// `coef · F_1 ⊗ F_2 ⊗ …`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorTerm {
    pub coef: f64,
    pub sites: Vec<Site>,
}

impl TensorTerm {
    pub fn new(coef: f64, sites: &[Site]) -> Self {
        TensorTerm {
            coef,
            sites: sites.to_vec(),
        }
    }
}

/// Sum of Kronecker monomials of single-site operators, all at the angle of
/// `rep`. Site 1 is the most significant tensor index.
pub fn tensor_operator(rep: &RotationRep, terms: &[TensorTerm]) -> Result<HermitianOperator> {
    tensor_operator_with_cap(rep, terms, DEFAULT_KRON_CAP)
}

pub fn tensor_operator_with_cap(rep: &RotationRep, terms: &[TensorTerm], cap: usize) -> Result<HermitianOperator> {
    let sites = match terms.first() {
        Some(t) => t.sites.len(),
        None => return Ok(HermitianOperator::zeros(1)),
    };
    if terms.iter().any(|t| t.sites.len() != sites) {
        return Err(Error::InvalidParameter("tensor terms with different site counts".into()));
    }
    let q = rep.dim();
    let dim = (0..sites).try_fold(1usize, |acc, _| acc.checked_mul(q)).unwrap_or(usize::MAX);
    if dim > cap {
        return Err(Error::DimensionCap { requested: dim, cap });
    }
    let identity = HermitianOperator::identity(q);
    let xy = rep.xy_anticommutator();
    let mut acc = vec![0.0; dim * dim];
    for term in terms {
        let mut coef = term.coef;
        let mut factors: Vec<&[f64]> = Vec::with_capacity(sites);
        for site in &term.sites {
            factors.push(match site {
                Site::I => identity.real_part(),
                Site::X => rep.x().real_part(),
                Site::Y => rep.y().real_part(),
                Site::XYSym => xy.real_part(),
                Site::Z => {
                    coef *= rep.z();
                    identity.real_part()
                }
            });
        }
        if coef != 0.0 {
            add_kron(&mut acc, q, &factors, coef);
        }
    }
    HermitianOperator::from_real_symmetric(dim, acc)
}

/// `acc += coef · A_1 ⊗ … ⊗ A_k`, skipping zero entries of each factor.
fn add_kron(acc: &mut [f64], q: usize, factors: &[&[f64]], coef: f64) {
    let dim = q.pow(factors.len() as u32);
    let nonzero: Vec<Vec<(usize, usize, f64)>> = factors
        .iter()
        .map(|f| {
            (0..q * q)
                .filter(|&k| f[k] != 0.0)
                .map(|k| (k / q, k % q, f[k]))
                .collect()
        })
        .collect();
    let mut stack: Vec<(usize, usize, f64)> = vec![(0, 0, coef)];
    for nz in &nonzero {
        let mut next = Vec::with_capacity(stack.len() * nz.len());
        for &(r, c, v) in &stack {
            for &(i, j, w) in nz {
                next.push((r * q + i, c * q + j, v * w));
            }
        }
        stack = next;
    }
    for (r, c, v) in stack {
        acc[r * dim + c] += v;
    }
}
