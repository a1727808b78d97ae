use serde::Serialize;

use crate::error::{invalid, Result};
use crate::group_algebra::{FiniteMatrixElt, GroupElement};

/// Images of the rank-three Heisenberg generators in `SL_5(ℤ/qℤ)` under
/// `x₁=e12(t_r), x₂=e13(t_s), x₃=e14(t_r), y₁=e25(t_s), y₂=e35(t_r),
/// y₃=e45(t_s), z=e15(t_r t_s)` for concrete residues `t_r, t_s`.
#[derive(Clone, Debug)]
pub struct El5Substitution {
    pub q: u64,
    pub t_r: i64,
    pub t_s: i64,
    pub x: [FiniteMatrixElt; 3],
    pub y: [FiniteMatrixElt; 3],
    pub z: FiniteMatrixElt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationOutcome {
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct El5Report {
    pub q: u64,
    pub t_r: i64,
    pub t_s: i64,
    pub relations: Vec<RelationOutcome>,
    pub pass: bool,
}

pub fn instantiate_el5(q: u64, t_r: i64, t_s: i64) -> Result<El5Substitution> {
    if q < 2 {
        return invalid(format!("modulus must be at least 2, got {q}"));
    }
    let e = |i, j, r| FiniteMatrixElt::elementary(5, q, i, j, r);
    Ok(El5Substitution {
        q,
        t_r,
        t_s,
        x: [e(1, 2, t_r)?, e(1, 3, t_s)?, e(1, 4, t_r)?],
        y: [e(2, 5, t_s)?, e(3, 5, t_r)?, e(4, 5, t_s)?],
        z: e(1, 5, t_r * t_s)?,
    })
}

impl El5Substitution {
    /// `[x_i, y_i] = z`, `[x_i, y_j] = 1` for `i ≠ j`, the `x`'s commute, the
    /// `y`'s commute, and `z` is central.
    pub fn check(&self) -> El5Report {
        let mut relations = Vec::new();
        let mut push = |name: String, holds: bool| relations.push(RelationOutcome { relation: name, holds });
        for i in 0..3 {
            for j in 0..3 {
                let c = self.x[i].commutator(&self.y[j]);
                if i == j {
                    push(format!("[x{0}, y{0}] = z", i + 1), c == self.z);
                } else {
                    push(format!("[x{}, y{}] = 1", i + 1, j + 1), c.is_identity());
                }
                if i < j {
                    push(
                        format!("[x{}, x{}] = 1", i + 1, j + 1),
                        self.x[i].commutator(&self.x[j]).is_identity(),
                    );
                    push(
                        format!("[y{}, y{}] = 1", i + 1, j + 1),
                        self.y[i].commutator(&self.y[j]).is_identity(),
                    );
                }
            }
            push(format!("[z, x{}] = 1", i + 1), self.z.commutator(&self.x[i]).is_identity());
            push(format!("[z, y{}] = 1", i + 1), self.z.commutator(&self.y[i]).is_identity());
        }
        let pass = relations.iter().all(|r| r.holds);
        El5Report {
            q: self.q,
            t_r: self.t_r,
            t_s: self.t_s,
            relations,
            pass,
        }
    }
}

/// Runs [`El5Substitution::check`] for every pair of residues `(t_r, t_s)`.
pub fn el5_sweep(q: u64) -> Result<Vec<El5Report>> {
    let mut out = Vec::new();
    for t_r in 0..q as i64 {
        for t_s in 0..q as i64 {
            out.push(instantiate_el5(q, t_r, t_s)?.check());
        }
    }
    Ok(out)
}
