use std::f64::consts::PI;

use super::report::{par_map, sweep_grid, SubCheck, SweepReport};
use super::SweepConfig;
use crate::error::{invalid, Result};
use crate::linalg::{CMatrix, CutMode, HermitianOperator};
use crate::rotation::{almost_mathieu, farey_grid, farey_grid_half, farey_grid_upto, RationalAngle, RotationRep};

/// Largest deviation tolerated in the exact-arithmetic side identities.
const IDENTITY_TOL: f64 = 1e-12;
/// Entrywise tolerance for the projection identities `P Y P = 2P`.
const PROJECTION_TOL: f64 = 1e-9;

/// `‖H_{θ,λ}‖ ≤ λ + 2 - (2λ/(λ+2)) sin πθ`; margin is the slack, minimized
/// over the configured couplings.
pub fn verify_bz(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    if cfg.lambdas.is_empty() || cfg.lambdas.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
        return invalid("λ list must be non-empty and positive");
    }
    let records = sweep_grid(&farey_grid(cfg.q_max), |a| {
        let mut worst = f64::INFINITY;
        for &lambda in &cfg.lambdas {
            let bound = bz_bound(a, lambda);
            let norm = almost_mathieu(a, lambda)?.operator_norm()?;
            worst = worst.min(bound - norm);
        }
        Ok(worst)
    })?;
    Ok(SweepReport::from_records("bz", cfg.q_max, cfg.tol, records))
}

pub fn bz_bound(a: RationalAngle, lambda: f64) -> f64 {
    lambda + 2.0 - (2.0 * lambda / (lambda + 2.0)) * a.s()
}

/// `X_θ + Y_θ ⪰ ½√Z_θ = sin πθ`.
pub fn verify_xyz1(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let records = sweep_grid(&farey_grid(cfg.q_max), |a| {
        let rep = RotationRep::new(a);
        Ok((rep.x() + rep.y()).min_eigenvalue()? - a.s())
    })?;
    Ok(SweepReport::from_records("xyz1", cfg.q_max, cfg.tol, records))
}

/// `θ₀ = min{1/4, arcsin(κ√((1-κ)/R))/π}`.
pub fn zzz_theta0(r: f64, kappa: f64) -> f64 {
    (kappa * ((1.0 - kappa) / r).sqrt()).asin().min(PI / 4.0) / PI
}

/// `R X_θ + Y_θ ⪰ √((1-κ)R)·½√Z_θ` for `θ ≤ θ₀(R, κ)`.
pub fn verify_zzz(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let (r, kappa) = (cfg.r, cfg.kappa);
    if !(r >= 1.0 && r.is_finite()) {
        return invalid(format!("R must be at least 1, got {r}"));
    }
    if !(kappa > 0.0 && kappa < 1.0) {
        return invalid(format!("κ must lie in (0, 1), got {kappa}"));
    }
    let theta0 = zzz_theta0(r, kappa);
    let coef = ((1.0 - kappa) * r).sqrt();
    let records = sweep_grid(&farey_grid_upto(cfg.q_max, theta0), |a| {
        let rep = RotationRep::new(a);
        Ok((&rep.x().scale(r) + rep.y()).min_eigenvalue()? - coef * a.s())
    })?;
    Ok(SweepReport::from_records("zzz", cfg.q_max, cfg.tol, records)
        .with_constant("R", r)
        .with_constant("kappa", kappa)
        .with_constant("theta0", theta0))
}

/// The 2×2 block `T_{θ,m}` supported on `δ_{m-1}, δ_m`; summing the blocks
/// over `m ∈ ℤ/q` recovers `2s(X+Y) + ½(XY+YX)`.
pub fn xyz2_block(a: RationalAngle, m: i64) -> [[f64; 2]; 2] {
    let s = a.s();
    let (b0, b1) = (a.b(m - 1), a.b(m));
    let off = -(2.0 * s + b0 + b1);
    [[2.0 * (s + 1.0) * b0 + 2.0 * s, off], [off, 2.0 * (s + 1.0) * b1 + 2.0 * s]]
}

/// `sin(kπθ)` from the exact residue of `k·p mod 2q`.
fn sin_multiple(a: RationalAngle, k: i64) -> f64 {
    let r = (k * a.p() as i64).rem_euclid(2 * a.q() as i64);
    (PI * r as f64 / a.q() as f64).sin()
}

struct BlockStats {
    min_det: f64,
    min_trace: f64,
    identity_error: f64,
    printed_mismatches: usize,
    block_sum_error: f64,
}

fn xyz2_blocks(a: RationalAngle) -> Result<BlockStats> {
    let q = a.q() as usize;
    let s = a.s();
    let mut st = BlockStats {
        min_det: f64::INFINITY,
        min_trace: f64::INFINITY,
        identity_error: 0.0,
        printed_mismatches: 0,
        block_sum_error: 0.0,
    };
    if q == 1 {
        // The operator is the zero 1×1 matrix; there are no blocks.
        st.min_det = 0.0;
        st.min_trace = 0.0;
        return Ok(st);
    }
    let mut sum = vec![0.0; q * q];
    for m in 0..q as i64 {
        let t = xyz2_block(a, m);
        st.min_det = st.min_det.min(t[0][0] * t[1][1] - t[0][1] * t[1][0]);
        st.min_trace = st.min_trace.min(t[0][0] + t[1][1]);
        let diff = a.b(m - 1) - a.b(m);
        let corrected = -2.0 * s * sin_multiple(a, 2 * m - 1);
        st.identity_error = st.identity_error.max((diff - corrected).abs());
        let printed = -2.0 * s * a.theta() * sin_multiple(a, 2 * m - 1);
        if (diff - printed).abs() > IDENTITY_TOL {
            st.printed_mismatches += 1;
        }
        let idx = [(m - 1).rem_euclid(q as i64) as usize, m as usize];
        for (i, &r) in idx.iter().enumerate() {
            for (j, &c) in idx.iter().enumerate() {
                sum[r * q + c] += t[i][j];
            }
        }
    }
    let op = xyz2_operator(a)?;
    st.block_sum_error = op
        .real_part()
        .iter()
        .zip(&sum)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok(st)
}

/// `2 sin(πθ)(X_θ + Y_θ) + ½(X_θY_θ + Y_θX_θ)`.
pub fn xyz2_operator(a: RationalAngle) -> Result<HermitianOperator> {
    let rep = RotationRep::new(a);
    Ok(&(rep.x() + rep.y()).scale(2.0 * a.s()) + &rep.xy_anticommutator().scale(0.5))
}

/// `(X+Y)√Z + ½(XY+YX) ⪰ 0`, checked both by the minimum eigenvalue of the
/// operator and by the 2×2 blocks whose sum it is.
pub fn verify_xyz2(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let grid = farey_grid(cfg.q_max);
    let records = sweep_grid(&grid, |a| xyz2_operator(a)?.min_eigenvalue())?;
    let stats = par_map(&grid, |&a| xyz2_blocks(a))?;
    let fold = |f: fn(&BlockStats) -> f64, init: f64, min: bool| {
        stats
            .iter()
            .map(f)
            .fold(init, |acc, v| if min { acc.min(v) } else { acc.max(v) })
    };
    let min_det = fold(|s| s.min_det, f64::INFINITY, true);
    let min_trace = fold(|s| s.min_trace, f64::INFINITY, true);
    let identity_error = fold(|s| s.identity_error, 0.0, false);
    let block_sum_error = fold(|s| s.block_sum_error, 0.0, false);
    let mismatches: usize = stats.iter().map(|s| s.printed_mismatches).sum();
    let mut report = SweepReport::from_records("xyz2", cfg.q_max, cfg.tol, records)
        .with_subcheck(SubCheck::at_least("block_min_det", min_det, -cfg.tol))
        .with_subcheck(SubCheck::at_least("block_min_trace", min_trace, -cfg.tol))
        .with_subcheck(SubCheck::at_most("b_difference_identity_max_error", identity_error, IDENTITY_TOL))
        .with_subcheck(SubCheck::at_most("block_sum_max_error", block_sum_error, IDENTITY_TOL));
    report.constants.insert("printed_difference_form_mismatches".into(), mismatches as f64);
    Ok(report)
}

/// `‖(1-π(x))(1-π(y))‖ ≤ 4 cos(πθ/2)` on `θ ∈ [0, 1/2]`.
pub fn verify_prodnorm(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let records = sweep_grid(&farey_grid_half(cfg.q_max), |a| {
        Ok(4.0 * (PI * a.theta() / 2.0).cos() - prodnorm(a)?)
    })?;
    Ok(SweepReport::from_records("prodnorm", cfg.q_max, cfg.tol, records))
}

pub fn prodnorm(a: RationalAngle) -> Result<f64> {
    let rep = RotationRep::new(a);
    let id = CMatrix::identity(rep.dim());
    (&(&id - &rep.pi_x()) * &(&id - &rep.pi_y())).spectral_norm()
}

/// Result of the projection checks at a single angle and cut.
#[derive(Clone, Debug)]
pub struct XSmallPoint {
    pub norm: f64,
    pub bound: f64,
    /// Max-entry deviation of `P_X Y P_X - 2P_X` and `P_Y X P_Y - 2P_Y`.
    pub identity_error: f64,
}

/// `‖P_{Y≤δ} P_{X≤δ}‖` against `√(2/(4-δ))`, valid for
/// `0 < δ < 2(1 - cos πθ)`.
pub fn xsmall_point(a: RationalAngle, delta: f64) -> Result<XSmallPoint> {
    let rep = RotationRep::new(a);
    let px = rep.x().spectral_projection(delta, CutMode::AtMost)?.matrix;
    let py = rep.y().spectral_projection(delta, CutMode::AtMost)?.matrix;
    let norm = (&py * &px).spectral_norm()?;
    let (x, y) = (rep.x().to_matrix(), rep.y().to_matrix());
    let two = num_complex::Complex64::new(2.0, 0.0);
    let e1 = (&(&px * &y) * &px).max_abs_diff(&px.scale(two));
    let e2 = (&(&py * &x) * &py).max_abs_diff(&py.scale(two));
    Ok(XSmallPoint {
        norm,
        bound: (2.0 / (4.0 - delta)).sqrt(),
        identity_error: e1.max(e2),
    })
}

pub fn xsmall_valid(a: RationalAngle, delta: f64) -> bool {
    a.p() > 0 && 2 * a.p() <= a.q() && delta > 0.0 && delta < 2.0 * (1.0 - (PI * a.theta()).cos())
}

pub fn verify_xsmall(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    if cfg.deltas.is_empty() || cfg.deltas.iter().any(|&d| !(d > 0.0 && d < 4.0)) {
        return invalid("δ list must be non-empty with entries in (0, 4)");
    }
    let grid: Vec<RationalAngle> = farey_grid_half(cfg.q_max)
        .into_iter()
        .filter(|&a| cfg.deltas.iter().any(|&d| xsmall_valid(a, d)))
        .collect();
    let points = par_map(&grid, |&a| {
        let mut margin = f64::INFINITY;
        let mut err: f64 = 0.0;
        for &d in cfg.deltas.iter().filter(|&&d| xsmall_valid(a, d)) {
            let pt = xsmall_point(a, d)?;
            margin = margin.min(pt.bound - pt.norm);
            err = err.max(pt.identity_error);
        }
        Ok((margin, err))
    })?;
    let records = grid
        .iter()
        .zip(&points)
        .map(|(a, &(margin, _))| super::AngleRecord {
            p: a.p(),
            q: a.q(),
            theta: a.theta(),
            margin,
        })
        .collect();
    let err = points.iter().map(|p| p.1).fold(0.0, f64::max);
    Ok(SweepReport::from_records("xsmall", cfg.q_max, cfg.tol, records)
        .with_subcheck(SubCheck::at_most("projection_identity_max_error", err, PROJECTION_TOL)))
}
