use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::rotation::RationalAngle;

/// Margin at one grid angle. Margins are minimum eigenvalues or norm slacks:
/// non-negative means the inequality holds at that angle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleRecord {
    pub p: u32,
    pub q: u32,
    pub theta: f64,
    pub margin: f64,
}

/// Auxiliary check attached to a sweep (block tests, identities, ...).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub value: f64,
    pub pass: bool,
}

impl SubCheck {
    pub fn at_least(name: &str, value: f64, bound: f64) -> Self {
        SubCheck {
            name: name.to_string(),
            value,
            pass: value >= bound,
        }
    }

    pub fn at_most(name: &str, value: f64, bound: f64) -> Self {
        SubCheck {
            name: name.to_string(),
            value,
            pass: value <= bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub check: String,
    pub q_max: u32,
    pub tol: f64,
    pub records: Vec<AngleRecord>,
    /// `None` for an empty grid.
    pub min_margin: Option<f64>,
    pub argmin: Option<RationalAngle>,
    pub constants: BTreeMap<String, f64>,
    pub subchecks: Vec<SubCheck>,
    pub warnings: Vec<String>,
    pub pass: bool,
}

impl SweepReport {
    pub(crate) fn from_records(check: &str, q_max: u32, tol: f64, records: Vec<AngleRecord>) -> Self {
        let mut best: Option<&AngleRecord> = None;
        for r in &records {
            if best.is_none_or(|b| r.margin < b.margin) {
                best = Some(r);
            }
        }
        let min_margin = best.map(|r| r.margin);
        let argmin = best.map(|r| RationalAngle::new(r.p, r.q).expect("grid angles are reduced"));
        let mut warnings = Vec::new();
        if records.is_empty() {
            warnings.push("empty sweep: no grid angle in range".to_string());
        }
        let pass = min_margin.is_none_or(|m| m >= -tol);
        SweepReport {
            check: check.to_string(),
            q_max,
            tol,
            records,
            min_margin,
            argmin,
            constants: BTreeMap::new(),
            subchecks: Vec::new(),
            warnings,
            pass,
        }
    }

    pub(crate) fn with_constant(mut self, name: &str, value: f64) -> Self {
        self.constants.insert(name.to_string(), value);
        self
    }

    pub(crate) fn with_subcheck(mut self, check: SubCheck) -> Self {
        self.pass &= check.pass;
        self.subchecks.push(check);
        self
    }

    pub fn margin_at(&self, angle: RationalAngle) -> Option<f64> {
        self.records
            .iter()
            .find(|r| r.p == angle.p() && r.q == angle.q())
            .map(|r| r.margin)
    }
}

/// Evaluates `margin` at every grid angle in parallel; output order follows
/// the grid.
pub(crate) fn sweep_grid<F>(grid: &[RationalAngle], margin: F) -> Result<Vec<AngleRecord>>
where
    F: Fn(RationalAngle) -> Result<f64> + Sync,
{
    grid.par_iter()
        .map(|&a| {
            Ok(AngleRecord {
                p: a.p(),
                q: a.q(),
                theta: a.theta(),
                margin: margin(a)?,
            })
        })
        .collect()
}

/// Parallel map with results in input order.
pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    items.par_iter().map(f).collect()
}
