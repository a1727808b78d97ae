//! Grid sweeps checking the operator inequalities in the rotation
//! representations, and scans for the constants they depend on.
//!
//! Positivity in the group C*-algebra is approximated by a minimum
//! eigenvalue `≥ -tol` at every rational angle of a Farey grid; the grid order
//! is the accuracy knob.

mod multi;
mod report;
mod single;

use serde::Serialize;

pub use multi::{
    formula_operator, search_constants, smalltheta_operator, tensor_margin, verify_formula, verify_smalltheta,
    ScanEntry, SearchReport, SearchSpace, TensorCheck, DEFAULT_EPSILON_SCAN, DEFAULT_R_SCAN, DEFAULT_THETA0_SCAN,
};
pub use report::{AngleRecord, SubCheck, SweepReport};
pub use single::{
    bz_bound, prodnorm, verify_bz, verify_prodnorm, verify_xsmall, verify_xyz1, verify_xyz2, verify_zzz,
    xsmall_point, xsmall_valid, xyz2_block, xyz2_operator, zzz_theta0, XSmallPoint,
};

use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub q_max: u32,
    pub tol: f64,
    pub lambdas: Vec<f64>,
    pub r: f64,
    pub kappa: f64,
    pub epsilon: f64,
    pub theta0: Option<f64>,
    pub deltas: Vec<f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            q_max: 60,
            tol: 1e-9,
            lambdas: vec![1.0, 2.0, 4.0],
            r: 4.0,
            kappa: 0.5,
            epsilon: 0.125,
            theta0: None,
            deltas: vec![0.1, 0.3, 0.5],
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q_max == 0 {
            return invalid("grid order must be at least 1");
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return invalid(format!("tolerance must be non-negative, got {}", self.tol));
        }
        Ok(())
    }
}
