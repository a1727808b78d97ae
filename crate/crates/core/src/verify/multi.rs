use serde::Serialize;

use super::report::{par_map, AngleRecord, SweepReport};
use super::SweepConfig;
use crate::error::{invalid, Result};
use crate::linalg::HermitianOperator;
use crate::rotation::{farey_grid_half, tensor_operator, RationalAngle, RotationRep, Site, TensorTerm};

pub const DEFAULT_THETA0_SCAN: [f64; 3] = [1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0];
pub const DEFAULT_R_SCAN: [f64; 5] = [2.0, 4.0, 8.0, 16.0, 32.0];
pub const DEFAULT_EPSILON_SCAN: [f64; 3] = [1.0 / 4.0, 1.0 / 8.0, 1.0 / 16.0];

/// Two-site operator `R(X⊗Y + Y⊗X) + X⊗X + Y⊗Y + (XY+YX)⊗I`.
pub fn smalltheta_operator(a: RationalAngle, r: f64) -> Result<HermitianOperator> {
    use Site::*;
    let rep = RotationRep::new(a);
    tensor_operator(
        &rep,
        &[
            TensorTerm::new(r, &[X, Y]),
            TensorTerm::new(r, &[Y, X]),
            TensorTerm::new(1.0, &[X, X]),
            TensorTerm::new(1.0, &[Y, Y]),
            TensorTerm::new(1.0, &[XYSym, I]),
        ],
    )
}

/// Three-site operator
/// `R(X₁Y₂ + Y₁X₂ + X₁Y₃ + Y₁X₃) + X₁X₂ + Y₁Y₂ + X₁Y₁ + Y₁X₁`.
pub fn formula_operator(a: RationalAngle, r: f64) -> Result<HermitianOperator> {
    use Site::*;
    let rep = RotationRep::new(a);
    tensor_operator(
        &rep,
        &[
            TensorTerm::new(r, &[X, Y, I]),
            TensorTerm::new(r, &[Y, X, I]),
            TensorTerm::new(r, &[X, I, Y]),
            TensorTerm::new(r, &[Y, I, X]),
            TensorTerm::new(1.0, &[X, X, I]),
            TensorTerm::new(1.0, &[Y, Y, I]),
            TensorTerm::new(1.0, &[XYSym, I, I]),
        ],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorCheck {
    SmallTheta,
    Formula,
}

impl TensorCheck {
    fn name(self) -> &'static str {
        match self {
            TensorCheck::SmallTheta => "smalltheta",
            TensorCheck::Formula => "formula",
        }
    }

    pub fn operator(self, a: RationalAngle, r: f64) -> Result<HermitianOperator> {
        match self {
            TensorCheck::SmallTheta => smalltheta_operator(a, r),
            TensorCheck::Formula => formula_operator(a, r),
        }
    }
}

/// `λ_min(A_R) - ε·4 sin²πθ` where `A_R` is the operator of `check`.
pub fn tensor_margin(check: TensorCheck, a: RationalAngle, r: f64, epsilon: f64) -> Result<f64> {
    Ok(check.operator(a, r)?.min_eigenvalue()? - epsilon * a.z_scalar())
}

fn validate_constants(r: f64, epsilon: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return invalid(format!("R must be positive, got {r}"));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return invalid(format!("ε must be positive, got {epsilon}"));
    }
    Ok(())
}

/// Sweep of the two-site inequality on `θ ≤ θ₀` (`θ₀ = 1/2` when unset).
pub fn verify_smalltheta(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    validate_constants(cfg.r, cfg.epsilon)?;
    let theta0 = cfg.theta0.unwrap_or(0.5);
    if !(0.0..=0.5).contains(&theta0) {
        return invalid(format!("θ₀ must lie in [0, 1/2], got {theta0}"));
    }
    let grid: Vec<RationalAngle> = farey_grid_half(cfg.q_max)
        .into_iter()
        .filter(|a| a.theta() <= theta0)
        .collect();
    let records = super::report::sweep_grid(&grid, |a| {
        tensor_margin(TensorCheck::SmallTheta, a, cfg.r, cfg.epsilon)
    })?;
    Ok(SweepReport::from_records("smalltheta", cfg.q_max, cfg.tol, records)
        .with_constant("theta0", theta0)
        .with_constant("R", cfg.r)
        .with_constant("epsilon", cfg.epsilon))
}

/// Sweep of the three-site inequality over `θ ∈ [0, 1/2]`.
pub fn verify_formula(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    validate_constants(cfg.r, cfg.epsilon)?;
    let records = super::report::sweep_grid(&farey_grid_half(cfg.q_max), |a| {
        tensor_margin(TensorCheck::Formula, a, cfg.r, cfg.epsilon)
    })?;
    Ok(SweepReport::from_records("formula", cfg.q_max, cfg.tol, records)
        .with_constant("R", cfg.r)
        .with_constant("epsilon", cfg.epsilon))
}

/// Grid of candidate constants, scanned in the listed order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchSpace {
    /// Only used by the two-site check; scanned first (outermost).
    pub theta0s: Vec<f64>,
    pub rs: Vec<f64>,
    pub epsilons: Vec<f64>,
}

impl SearchSpace {
    pub fn smalltheta_default() -> Self {
        SearchSpace {
            theta0s: DEFAULT_THETA0_SCAN.to_vec(),
            rs: DEFAULT_R_SCAN.to_vec(),
            epsilons: DEFAULT_EPSILON_SCAN.to_vec(),
        }
    }

    pub fn formula_default() -> Self {
        SearchSpace {
            theta0s: vec![0.5],
            ..Self::smalltheta_default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanEntry {
    pub theta0: f64,
    pub r: f64,
    pub epsilon: f64,
    pub min_margin: Option<f64>,
    pub argmin: Option<RationalAngle>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub check: TensorCheck,
    pub q_max: u32,
    pub tol: f64,
    /// Every scanned triple, in scan order.
    pub scanned: Vec<ScanEntry>,
    /// First passing triple in scan order.
    pub found: Option<ScanEntry>,
    /// Per-angle sweep at the found triple, or at the best-scoring triple
    /// when nothing passes.
    pub report: SweepReport,
}

impl SearchReport {
    pub fn pass(&self) -> bool {
        self.found.is_some()
    }
}

/// Scans the candidate constants. The minimum eigenvalue depends only on
/// `(θ, R)`, so it is computed once per pair and every `(θ₀, ε)` is then
/// evaluated from it.
pub fn search_constants(check: TensorCheck, cfg: &SweepConfig, space: &SearchSpace) -> Result<SearchReport> {
    cfg.validate()?;
    if space.theta0s.is_empty() || space.rs.is_empty() || space.epsilons.is_empty() {
        return invalid("search space must be non-empty");
    }
    for &r in &space.rs {
        for &e in &space.epsilons {
            validate_constants(r, e)?;
        }
    }
    if space.theta0s.iter().any(|t| !(0.0..=0.5).contains(t)) {
        return invalid("θ₀ candidates must lie in [0, 1/2]");
    }
    let bound = space.theta0s.iter().cloned().fold(0.0, f64::max);
    let grid: Vec<RationalAngle> = farey_grid_half(cfg.q_max)
        .into_iter()
        .filter(|a| a.theta() <= bound)
        .collect();
    let jobs: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|g| (0..space.rs.len()).map(move |r| (g, r)))
        .collect();
    let mins = par_map(&jobs, |&(g, r)| check.operator(grid[g], space.rs[r])?.min_eigenvalue())?;
    let lam = |g: usize, r: usize| mins[g * space.rs.len() + r];

    let records_for = |theta0: f64, ri: usize, eps: f64| -> Vec<AngleRecord> {
        grid.iter()
            .enumerate()
            .filter(|(_, a)| a.theta() <= theta0)
            .map(|(g, a)| AngleRecord {
                p: a.p(),
                q: a.q(),
                theta: a.theta(),
                margin: lam(g, ri) - eps * a.z_scalar(),
            })
            .collect()
    };

    let mut scanned = Vec::new();
    let mut found: Option<(ScanEntry, (f64, usize, f64))> = None;
    let mut best: Option<(ScanEntry, (f64, usize, f64))> = None;
    for &theta0 in &space.theta0s {
        for (ri, &r) in space.rs.iter().enumerate() {
            for &eps in &space.epsilons {
                let rep = SweepReport::from_records(check.name(), cfg.q_max, cfg.tol, records_for(theta0, ri, eps));
                let entry = ScanEntry {
                    theta0,
                    r,
                    epsilon: eps,
                    min_margin: rep.min_margin,
                    argmin: rep.argmin,
                    pass: rep.pass,
                };
                if entry.pass && found.is_none() {
                    found = Some((entry.clone(), (theta0, ri, eps)));
                }
                let score = entry.min_margin.unwrap_or(f64::INFINITY);
                if best
                    .as_ref()
                    .is_none_or(|(b, _)| score > b.min_margin.unwrap_or(f64::INFINITY))
                {
                    best = Some((entry.clone(), (theta0, ri, eps)));
                }
                scanned.push(entry);
            }
        }
    }
    let (chosen, (theta0, ri, eps)) = found.clone().or(best).expect("non-empty scan");
    let mut report = SweepReport::from_records(check.name(), cfg.q_max, cfg.tol, records_for(theta0, ri, eps))
        .with_constant("R", chosen.r)
        .with_constant("epsilon", chosen.epsilon);
    if check == TensorCheck::SmallTheta {
        report = report.with_constant("theta0", chosen.theta0);
    }
    report.pass = found.is_some();
    Ok(SearchReport {
        check,
        q_max: cfg.q_max,
        tol: cfg.tol,
        scanned,
        found: found.map(|f| f.0),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_angle_is_zero() {
        let a = RationalAngle::ZERO;
        assert_eq!(tensor_margin(TensorCheck::SmallTheta, a, 4.0, 0.25).unwrap(), 0.0);
        assert_eq!(tensor_margin(TensorCheck::Formula, a, 4.0, 0.25).unwrap(), 0.0);
    }

    #[test]
    fn smalltheta_fails_at_half_turn() {
        // At θ = 1/2 the operator has a kernel vector for every R, so the
        // margin is at most -4ε.
        let a = RationalAngle::new(1, 2).unwrap();
        for r in DEFAULT_R_SCAN {
            let m = tensor_margin(TensorCheck::SmallTheta, a, r, 1.0 / 16.0).unwrap();
            assert!(m <= -0.25 + 1e-12, "R={r}: {m}");
        }
    }

    #[test]
    fn margins_nondecreasing_in_r() {
        for check in [TensorCheck::SmallTheta, TensorCheck::Formula] {
            for a in farey_grid_half(5) {
                let mut prev = f64::NEG_INFINITY;
                for r in DEFAULT_R_SCAN {
                    let m = tensor_margin(check, a, r, 0.125).unwrap();
                    assert!(m >= prev - 1e-10, "{check:?} {a}: R={r}");
                    prev = m;
                }
            }
        }
    }
}
