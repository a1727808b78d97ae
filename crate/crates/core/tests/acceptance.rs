//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use opineq_core::augmentation::{gram_matrix_check, graded_dimension, graded_dimension_formula, phi_report};
use opineq_core::cayley::{family_report, PRule};
use opineq_core::group_algebra::sos_identity_sides;
use opineq_core::rotation::{RationalAngle, RotationRep};
use opineq_core::symmetrization::{
    decomposition_identity, orbit_identity, stability_threshold, OrbitIdentity, StabilityCertificate,
};
use opineq_core::verify::{
    search_constants, verify_bz, verify_prodnorm, verify_xsmall, verify_xyz1, verify_xyz2, verify_zzz,
    SearchSpace, SweepConfig, SweepReport, TensorCheck,
};
use opineq_core::{HermitianOperator, Result};

const TOL: f64 = 1e-9;

type Outcome = Result<(bool, String)>;

fn angle(p: u32, q: u32) -> RationalAngle {
    RationalAngle::new(p, q).unwrap()
}

fn cfg(q_max: u32) -> SweepConfig {
    SweepConfig {
        q_max,
        tol: TOL,
        ..SweepConfig::default()
    }
}

fn min_margin(r: &SweepReport) -> f64 {
    r.min_margin.unwrap_or(f64::NAN)
}

fn within(elapsed: Duration, limit_s: u64) -> bool {
    elapsed <= Duration::from_secs(limit_s)
}

fn c1() -> Outcome {
    let t = Instant::now();
    let r = verify_bz(&cfg(60))?;
    let ok = r.pass && min_margin(&r) >= -TOL && within(t.elapsed(), 30);
    Ok((ok, format!("min margin {:.3e} over {} points", min_margin(&r), r.records.len())))
}

fn c2() -> Outcome {
    let r = verify_xyz1(&cfg(60))?;
    let half = r.margin_at(angle(1, 2)).unwrap_or(f64::NAN);
    let closed = 3.0 - 2.0 * 2f64.sqrt();
    let ok = r.pass && min_margin(&r) >= -TOL && (half - closed).abs() <= 1e-12;
    Ok((ok, format!("min margin {:.3e}, margin at 1/2 off closed form by {:.1e}", min_margin(&r), (half - closed).abs())))
}

fn c3() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (r, kappa) in [(1.0, 0.5), (4.0, 0.5), (16.0, 0.25)] {
        let rep = verify_zzz(&SweepConfig { r, kappa, ..cfg(60) })?;
        let theta0 = f64::min(0.25, (kappa * ((1.0 - kappa) / r).sqrt()).asin() / std::f64::consts::PI);
        let reported = rep.constants.get("theta0").copied().unwrap_or(f64::NAN);
        let on_subgrid = rep.records.iter().all(|a| a.theta <= theta0 + 1e-15);
        ok &= rep.pass && min_margin(&rep) >= -TOL && (reported - theta0).abs() <= 1e-15 && on_subgrid;
        ok &= !rep.records.is_empty();
        notes.push(format!("R={r} κ={kappa}: θ₀={theta0:.5} min {:.3e}", min_margin(&rep)));
    }
    Ok((ok, notes.join("; ")))
}

fn c4() -> Outcome {
    let r = verify_xyz2(&cfg(60))?;
    let sub = |name: &str| r.subchecks.iter().find(|s| s.name == name).cloned();
    let det = sub("block_min_det");
    let ident = sub("b_difference_identity_max_error");
    let ok = r.pass
        && min_margin(&r) >= -TOL
        && det.as_ref().is_some_and(|s| s.pass && s.value >= -TOL)
        && ident.as_ref().is_some_and(|s| s.value <= 1e-12);
    Ok((
        ok,
        format!(
            "operator min {:.3e}, block min det {:.3e}, identity error {:.1e}",
            min_margin(&r),
            det.map_or(f64::NAN, |s| s.value),
            ident.map_or(f64::NAN, |s| s.value)
        ),
    ))
}

fn c5() -> Outcome {
    let r = verify_prodnorm(&cfg(60))?;
    let half = r.margin_at(angle(1, 2)).unwrap_or(f64::NAN);
    let ok = r.pass && min_margin(&r) >= -TOL && half.abs() <= 1e-9;
    Ok((ok, format!("min margin {:.3e}, slack at 1/2 {:.1e}", min_margin(&r), half)))
}

fn c6() -> Outcome {
    let r = verify_xsmall(&cfg(40))?;
    let ident = r.subchecks.iter().find(|s| s.name == "projection_identity_max_error");
    let ok = r.pass && min_margin(&r) >= -TOL && ident.is_some_and(|s| s.value <= 1e-9);
    Ok((ok, format!("min margin {:.3e} over {} (θ,δ) points", min_margin(&r), r.records.len())))
}

fn c7() -> Outcome {
    let t = Instant::now();
    let c = cfg(24);
    let found = search_constants(TensorCheck::SmallTheta, &c, &SearchSpace::smalltheta_default())?;
    let half_space = SearchSpace {
        theta0s: vec![0.5],
        ..SearchSpace::smalltheta_default()
    };
    let at_half = search_constants(TensorCheck::SmallTheta, &c, &half_space)?;
    let worst_at_half = at_half
        .scanned
        .iter()
        .map(|e| e.min_margin.unwrap_or(f64::NAN))
        .fold(f64::NEG_INFINITY, f64::max);
    let ok = found.pass() && !at_half.pass() && worst_at_half < 0.0 && within(t.elapsed(), 300);
    let triple = found
        .found
        .map(|e| format!("(θ₀, R, ε) = ({}, {}, {})", e.theta0, e.r, e.epsilon))
        .unwrap_or_else(|| "none found".into());
    Ok((ok, format!("{triple}; best margin with θ₀=1/2 is {worst_at_half:.3e}")))
}

fn c8() -> Outcome {
    let t = Instant::now();
    let r = search_constants(TensorCheck::Formula, &cfg(12), &SearchSpace::formula_default())?;
    let ok = r.pass() && within(t.elapsed(), 1800);
    let found = r
        .found
        .map(|e| format!("(R, ε) = ({}, {}), min margin {:.3e}", e.r, e.epsilon, e.min_margin.unwrap_or(f64::NAN)))
        .unwrap_or_else(|| "none found".into());
    Ok((ok, found))
}

fn c9() -> Outcome {
    let mut ok = true;
    let mut count = 0;
    for (m, n) in [(4, 5), (4, 6), (5, 6)] {
        for d in [1, 2] {
            for kind in OrbitIdentity::ALL {
                let check = orbit_identity(kind, m, n, d)?;
                let expected = match kind {
                    OrbitIdentity::Delta2 => m * (m - 1) * fact(n - 2),
                    OrbitIdentity::Adj => m * (m - 1) * (m - 2) * fact(n - 3),
                    OrbitIdentity::Op => m * (m - 1) * (m - 2) * (m - 3) * fact(n - 4),
                };
                ok &= check.matches && check.scalar.as_deref() == Some(expected.to_string().as_str());
                count += 1;
            }
        }
    }
    for m in 2..=5 {
        for d in [1, 2] {
            ok &= decomposition_identity(m, d)?.matches;
            count += 1;
        }
    }
    Ok((ok, format!("{count} exact identities")))
}

fn fact(n: usize) -> usize {
    (1..=n).product()
}

fn c10() -> Outcome {
    let int = |v: i64| BigRational::from(BigInt::from(v));
    let cert = StabilityCertificate::new(5, int(6), int(1))?;
    let mut ok = cert.min_n() == 15;
    for n in 5..=60 {
        let out = stability_threshold(&cert, n)?;
        ok &= out.applies == (n >= 15);
        ok &= out.epsilon_n == BigRational::new(BigInt::from(n as i64 - 2), BigInt::from(3));
    }
    Ok((ok, format!("threshold n = {}", cert.min_n())))
}

fn c11() -> Outcome {
    let dims_ok = (0..=10).all(|n| graded_dimension(n) == graded_dimension_formula(n))
        && (0..=10).all(|n| graded_dimension_formula(n) == (n / 2 + 1) * (n - n / 2 + 1));
    let phi = phi_report()?;
    let phi_ok = phi.phi_delta_squared == "0" && phi.phi_box == "4" && phi.phi_zbar_star_zbar == "2";
    let gram = gram_matrix_check()?;
    let expected = [0.0, 1.0, 1.0, 2.0];
    let gram_ok = gram.matches_reference
        && gram.eigenvalues.iter().zip(expected).all(|(a, b)| (a - b).abs() <= 1e-12);
    let (lhs, rhs) = sos_identity_sides();
    let exact = lhs == rhs;
    let mut numeric = 0.0f64;
    let grid = [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 5), (2, 5), (3, 7), (5, 8), (7, 9)];
    for (p, q) in grid {
        let rep = RotationRep::new(angle(p, q));
        let direct = HermitianOperator::anticommutator(rep.x(), rep.y())?.scale(0.5).shift(rep.z()).to_matrix();
        numeric = numeric
            .max(rep.evaluate(&lhs).max_abs_diff(&direct))
            .max(rep.evaluate(&rhs).max_abs_diff(&direct));
    }
    let ok = dims_ok && phi_ok && gram_ok && exact && numeric <= 1e-10;
    Ok((
        ok,
        format!(
            "dims {dims_ok}, φ values {phi_ok}, Gram {gram_ok}, exact SOS {exact}, numeric SOS error {numeric:.1e}"
        ),
    ))
}

fn c12() -> Outcome {
    let rows = family_report(3, &[2, 3, 4, 5], &PRule::Coprime, 400_000)?;
    let ok = !rows.is_empty()
        && rows.iter().all(|r| {
            r.order_matches && BigUint::from(r.order).to_string() == r.expected_order && r.normalized_gap > 0.01
        });
    let detail: Vec<String> = rows
        .iter()
        .map(|r| format!("q={} p={}: |G|={} gap {:.4}", r.q, r.p, r.order, r.normalized_gap))
        .collect();
    Ok((ok, detail.join("; ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("almost Mathieu norm bound", c1),
        ("X + Y ≥ sin πθ", c2),
        ("R·X + Y small-angle bound", c3),
        ("2s(X+Y) + ½(XY+YX) positivity", c4),
        ("product norm bound", c5),
        ("projection product bound", c6),
        ("two-site constant search", c7),
        ("three-site constant search", c8),
        ("symmetrization identities", c9),
        ("stability threshold", c10),
        ("augmentation and graded checks", c11),
        ("Cayley orders and spectral gaps", c12),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match run() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} {:>2} {name}: {detail} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
