use anyhow::{bail, Result};
use serde_json::json;

use opineq_core::augmentation::{gram_matrix_check, graded_dimension, graded_dimension_formula, phi_report};
use opineq_core::cayley::{family_report, PRule};
use opineq_core::group_algebra::sos_identity_sides;
use opineq_core::rotation::{farey_grid, RotationRep};
use opineq_core::symmetrization::{
    edge_pair_census, el5_sweep, orbit_identity, spade_to_heart, stability_threshold, IdentityCheck, OrbitIdentity,
    StabilityCertificate,
};
use opineq_core::verify::{
    search_constants, verify_bz, verify_prodnorm, verify_xsmall, verify_xyz1, verify_xyz2, verify_zzz, SearchSpace,
    SweepConfig, SweepReport, TensorCheck,
};
use opineq_core::{BigRational, HermitianOperator};

use crate::cli::{Command, Expander, Graded, IdentityKind, PChoice, Symmetry, Verify};
use crate::report::{Report, Table};

/// Failing angles listed as witnesses, at most.
const MAX_WITNESSES: usize = 20;

pub fn dispatch(command: &Command, tol: f64) -> Result<Report> {
    match command {
        Command::Verify(v) => verify(v, tol),
        Command::Symmetry(s) => symmetry(s),
        Command::Graded(g) => graded(g, tol),
        Command::Expander(e) => expander(e),
        Command::All { quick } => all(*quick, tol),
    }
}

fn config(qmax: u32, tol: f64) -> SweepConfig {
    SweepConfig {
        q_max: qmax,
        tol,
        ..SweepConfig::default()
    }
}

fn sweep(command: &str, r: SweepReport) -> Result<Report> {
    let mut out = Report::new(command).param("qmax", r.q_max).param("tol", r.tol);
    for (k, v) in &r.constants {
        out = out.param(k, v);
    }
    out.pass = r.pass;
    out.min_margin = r.min_margin;
    out.table = Table::new(&["p", "q", "theta", "margin"]);
    for rec in &r.records {
        out.table.push(vec![rec.p.to_string(), rec.q.to_string(), rec.theta.to_string(), rec.margin.to_string()]);
    }
    if let (Some(a), Some(m)) = (r.argmin, r.min_margin) {
        out.witnesses.push(json!({"kind": "argmin", "p": a.p(), "q": a.q(), "theta": a.theta(), "margin": m}));
    }
    for rec in r.records.iter().filter(|x| x.margin < -r.tol).take(MAX_WITNESSES) {
        out.witnesses.push(json!({"kind": "violation", "p": rec.p, "q": rec.q, "theta": rec.theta, "margin": rec.margin}));
    }
    for s in r.subchecks.iter().filter(|s| !s.pass) {
        out.witnesses.push(json!({"kind": "subcheck", "name": s.name, "value": s.value}));
    }
    out.summary = format!(
        "{} points, min margin {}",
        r.records.len(),
        r.min_margin.map_or("n/a".to_string(), |m| format!("{m:.6e}"))
    );
    if let Some(a) = r.argmin {
        out.summary += &format!(" at θ = {a}");
    }
    for w in &r.warnings {
        out.summary += &format!("; warning: {w}");
    }
    out.details(&r)
}

fn search(check: TensorCheck, cfg: &SweepConfig, space: SearchSpace) -> Result<Report> {
    let command = match check {
        TensorCheck::SmallTheta => "verify smalltheta",
        TensorCheck::Formula => "verify formula",
    };
    let res = search_constants(check, cfg, &space)?;
    let mut out = sweep(command, res.report.clone())?
        .param("theta0_candidates", &space.theta0s)
        .param("r_candidates", &space.rs)
        .param("epsilon_candidates", &space.epsilons);
    out.pass = res.pass();
    out.min_margin = res.report.min_margin;
    match &res.found {
        Some(e) => {
            out.witnesses.insert(0, json!({"kind": "found", "theta0": e.theta0, "r": e.r, "epsilon": e.epsilon}));
            out.summary = format!("found θ₀ = {}, R = {}, ε = {}; {}", e.theta0, e.r, e.epsilon, out.summary);
        }
        None => {
            let best = res
                .scanned
                .iter()
                .max_by(|a, b| a.min_margin.unwrap_or(f64::NEG_INFINITY).total_cmp(&b.min_margin.unwrap_or(f64::NEG_INFINITY)));
            if let Some(e) = best {
                out.witnesses.insert(
                    0,
                    json!({"kind": "best_failing", "theta0": e.theta0, "r": e.r, "epsilon": e.epsilon, "min_margin": e.min_margin, "argmin": e.argmin.map(|a| a.to_string())}),
                );
            }
            out.summary = format!("no candidate passes ({} scanned); {}", res.scanned.len(), out.summary);
        }
    }
    out.details(&res)
}

fn verify(v: &Verify, tol: f64) -> Result<Report> {
    match v {
        Verify::Bz { qmax, lambda } => {
            let cfg = SweepConfig { lambdas: lambda.clone(), ..config(*qmax, tol) };
            Ok(sweep("verify bz", verify_bz(&cfg)?)?.param("lambda", lambda))
        }
        Verify::Xyz1 { qmax } => sweep("verify xyz1", verify_xyz1(&config(*qmax, tol))?),
        Verify::Zzz { qmax, r, kappa } => {
            let cfg = SweepConfig { r: *r, kappa: *kappa, ..config(*qmax, tol) };
            sweep("verify zzz", verify_zzz(&cfg)?)
        }
        Verify::Xyz2 { qmax } => sweep("verify xyz2", verify_xyz2(&config(*qmax, tol))?),
        Verify::Prodnorm { qmax } => sweep("verify prodnorm", verify_prodnorm(&config(*qmax, tol))?),
        Verify::Xsmall { qmax, delta } => {
            let cfg = SweepConfig { deltas: delta.clone(), ..config(*qmax, tol) };
            Ok(sweep("verify xsmall", verify_xsmall(&cfg)?)?.param("delta", delta))
        }
        Verify::Smalltheta { qmax, theta0, r, epsilon } => {
            let d = SearchSpace::smalltheta_default();
            let space = SearchSpace {
                theta0s: theta0.map_or(d.theta0s, |t| vec![t]),
                rs: r.map_or(d.rs, |r| vec![r]),
                epsilons: epsilon.map_or(d.epsilons, |e| vec![e]),
            };
            search(TensorCheck::SmallTheta, &config(*qmax, tol), space)
        }
        Verify::Formula { qmax, r, epsilon } => {
            let d = SearchSpace::formula_default();
            let space = SearchSpace {
                theta0s: d.theta0s,
                rs: r.map_or(d.rs, |r| vec![r]),
                epsilons: epsilon.map_or(d.epsilons, |e| vec![e]),
            };
            search(TensorCheck::Formula, &config(*qmax, tol), space)
        }
    }
}

fn identity_table(checks: &[IdentityCheck]) -> Table {
    let mut t = Table::new(&["identity", "m", "n", "d", "lhs_terms", "rhs_terms", "match", "scalar", "expected_scalar"]);
    for c in checks {
        t.push(vec![
            c.identity.clone(),
            c.m.to_string(),
            c.n.to_string(),
            c.d.to_string(),
            c.lhs_terms.to_string(),
            c.rhs_terms.to_string(),
            c.matches.to_string(),
            c.scalar.clone().unwrap_or_default(),
            c.expected_scalar.clone().unwrap_or_default(),
        ]);
    }
    t
}

fn parse_rational(name: &str, s: &str) -> Result<BigRational> {
    match s.trim().parse::<BigRational>() {
        Ok(v) => Ok(v),
        Err(_) => bail!("--{name} must be an integer or a fraction p/q, got {s:?}"),
    }
}

fn symmetry(s: &Symmetry) -> Result<Report> {
    match s {
        Symmetry::Orbit { m, n, d, identity } => {
            let kinds: Vec<OrbitIdentity> = match identity {
                IdentityKind::Delta2 => vec![OrbitIdentity::Delta2],
                IdentityKind::Adj => vec![OrbitIdentity::Adj],
                IdentityKind::Op => vec![OrbitIdentity::Op],
                IdentityKind::All => OrbitIdentity::ALL.to_vec(),
            };
            let checks = kinds
                .into_iter()
                .map(|k| orbit_identity(k, *m, *n, *d))
                .collect::<opineq_core::Result<Vec<_>>>()?;
            let mut out = Report::new("symmetry orbit").param("m", m).param("n", n).param("d", d);
            out.pass = checks.iter().all(|c| c.matches);
            out.exact_match = Some(out.pass);
            out.witnesses = checks.iter().filter(|c| !c.matches).map(|c| json!(c)).collect();
            out.table = identity_table(&checks);
            out.summary = checks
                .iter()
                .map(|c| format!("{}: ×{} {}", c.identity, c.scalar.as_deref().unwrap_or("?"), if c.matches { "ok" } else { "MISMATCH" }))
                .collect::<Vec<_>>()
                .join(", ");
            out.details(&checks)
        }
        Symmetry::Census { m } => {
            let c = edge_pair_census(*m);
            let mut out = Report::new("symmetry census").param("m", m);
            // Discrepancies with the closed forms are reported, not failed.
            out.pass = true;
            out.exact_match = Some(c.edges_match && !c.adjacent_matches.is_empty() && !c.disjoint_matches.is_empty());
            out.table = Table::new(&["quantity", "ordered", "unordered", "reference", "matches"]);
            out.table.push(vec!["edges".into(), c.edges.to_string(), c.edges.to_string(), c.reference_edges.clone(), c.edges_match.to_string()]);
            out.table.push(vec![
                "adjacent_pairs".into(),
                c.adjacent_ordered_pairs.to_string(),
                c.adjacent_unordered_pairs.to_string(),
                c.reference_adjacent.clone(),
                c.adjacent_matches.join("|"),
            ]);
            out.table.push(vec![
                "disjoint_pairs".into(),
                c.disjoint_ordered_pairs.to_string(),
                c.disjoint_unordered_pairs.to_string(),
                c.reference_disjoint.clone(),
                c.disjoint_matches.join("|"),
            ]);
            out.summary = format!(
                "{} edges, {} adjacent and {} disjoint ordered pairs",
                c.edges, c.adjacent_ordered_pairs, c.disjoint_ordered_pairs
            );
            out.details(&c)
        }
        Symmetry::Spade { m, d } => {
            let rec = spade_to_heart(*m, *d)?;
            let checks = [rec.block.clone(), rec.target.clone(), rec.op.clone()];
            let mut out = Report::new("symmetry spade").param("m", m).param("d", d);
            out.pass = checks.iter().all(|c| c.matches);
            out.exact_match = Some(out.pass);
            out.table = identity_table(&checks);
            out.witnesses.push(json!({"r_factor": rec.r_factor, "epsilon_factor": rec.epsilon_factor}));
            out.summary = format!(
                "R' = {}·R, ε' = {}·ε",
                rec.r_factor.as_deref().unwrap_or("n/a"),
                rec.epsilon_factor.as_deref().unwrap_or("n/a")
            );
            out.details(&rec)
        }
        Symmetry::Threshold { m, r, epsilon, n, max } => {
            let cert = StabilityCertificate::new(*m, parse_rational("r", r)?, parse_rational("epsilon", epsilon)?)?;
            let sizes: Vec<usize> = match n {
                Some(n) => vec![*n],
                None if max >= m => (*m..=*max).collect(),
                None => bail!("--max must be at least --m"),
            };
            let rows = sizes
                .iter()
                .map(|&k| stability_threshold(&cert, k))
                .collect::<opineq_core::Result<Vec<_>>>()?;
            let mut out = Report::new("symmetry threshold").param("m", m).param("r", r).param("epsilon", epsilon);
            out.pass = true;
            out.table = Table::new(&["n", "applies", "op_coefficient", "epsilon_n", "epsilon_prime"]);
            for o in &rows {
                out.table.push(vec![
                    o.n.to_string(),
                    o.applies.to_string(),
                    o.op_coefficient.to_string(),
                    o.epsilon_n.to_string(),
                    o.epsilon_prime.to_string(),
                ]);
            }
            out.witnesses.push(json!({"min_n": cert.min_n()}));
            out.summary = format!("applies from n = {}", cert.min_n());
            out.details(json!({"certificate": cert, "rows": rows}))
        }
        Symmetry::El5 { q } => {
            let reports = el5_sweep(*q)?;
            let mut out = Report::new("symmetry el5").param("q", q);
            out.pass = reports.iter().all(|r| r.pass);
            out.exact_match = Some(out.pass);
            out.witnesses = reports.iter().filter(|r| !r.pass).take(MAX_WITNESSES).map(|r| json!(r)).collect();
            out.summary = format!("{} substitutions checked", reports.len());
            out.details(&reports)
        }
    }
}

fn graded(g: &Graded, tol: f64) -> Result<Report> {
    match g {
        Graded::Dims { max } => {
            if *max > 1000 {
                bail!("--max must be at most 1000");
            }
            let mut out = Report::new("graded dims").param("max", max);
            out.table = Table::new(&["n", "formula", "enumerated"]);
            let mut ok = true;
            for n in 0..=*max {
                let (f, e) = (graded_dimension_formula(n), graded_dimension(n));
                ok &= f == e;
                if f != e {
                    out.witnesses.push(json!({"n": n, "formula": f, "enumerated": e}));
                }
                out.table.push(vec![n.to_string(), f.to_string(), e.to_string()]);
            }
            out.pass = ok;
            out.exact_match = Some(ok);
            out.summary = format!("dimensions for n ≤ {max} {}", if ok { "match" } else { "DIFFER" });
            let rows: Vec<_> = (0..=*max).map(|n| json!({"n": n, "formula": graded_dimension_formula(n), "enumerated": graded_dimension(n)})).collect();
            out.details(rows)
        }
        Graded::Phi => {
            let r = phi_report()?;
            let mut out = Report::new("graded phi");
            out.pass = r.pass;
            out.exact_match = Some(r.pass);
            out.witnesses.push(json!({"phi_witness": r.phi_witness}));
            out.summary = format!(
                "φ(Δ²) = {}, φ(□) = {}, φ(z̄*z̄) = {}, φ(RΔ² + □/4 - z̄*z̄) = {}",
                r.phi_delta_squared, r.phi_box, r.phi_zbar_star_zbar, r.phi_witness
            );
            out.details(&r)
        }
        Graded::Gram => {
            let g = gram_matrix_check()?;
            let mut out = Report::new("graded gram");
            out.pass = g.matches_reference && g.psd;
            out.exact_match = Some(g.matches_reference);
            out.table = Table::new(&["row", "xx", "xy", "yx", "yy"]);
            for (name, row) in g.basis.iter().zip(&g.matrix) {
                let mut cells = vec![name.clone()];
                cells.extend(row.iter().map(|v| v.to_string()));
                out.table.push(cells);
            }
            out.summary = format!("eigenvalues {:?}, psd {}", g.eigenvalues, g.psd);
            out.details(&g)
        }
        Graded::SosIdentity { qmax } => {
            let (lhs, rhs) = sos_identity_sides();
            let exact = lhs == rhs;
            let mut out = Report::new("graded sos-identity").param("qmax", qmax).param("tol", tol);
            out.table = Table::new(&["p", "q", "theta", "max_error"]);
            let mut worst: f64 = 0.0;
            for a in farey_grid(*qmax) {
                let rep = RotationRep::new(a);
                let direct = HermitianOperator::anticommutator(rep.x(), rep.y())?.scale(0.5).shift(rep.z()).to_matrix();
                let err = rep.evaluate(&rhs).max_abs_diff(&direct);
                worst = worst.max(err);
                out.table.push(vec![a.p().to_string(), a.q().to_string(), a.theta().to_string(), err.to_string()]);
            }
            out.exact_match = Some(exact);
            out.pass = exact && worst <= tol;
            out.witnesses.push(json!({"max_numeric_error": worst}));
            out.summary = format!("exact identity {}, max error under π_θ {worst:.2e}", if exact { "holds" } else { "FAILS" });
            out.details(json!({"lhs_terms": lhs.len(), "rhs_terms": rhs.len(), "exact": exact, "max_numeric_error": worst}))
        }
    }
}

fn expander(e: &Expander) -> Result<Report> {
    let Expander::Run { n, q, p, cap } = e;
    let rule = match p {
        PChoice::One => PRule::One,
        PChoice::Coprime => PRule::Coprime,
    };
    let rows = family_report(*n, q, &rule, *cap)?;
    let mut out = Report::new("expander run").param("n", n).param("q", q).param("p", &rule).param("cap", cap);
    out.table = Table::new(&["n", "q", "p", "order", "degree", "lambda2", "gap", "normalized_gap"]);
    for r in &rows {
        out.table.push(vec![
            r.n.to_string(),
            r.q.to_string(),
            r.p.to_string(),
            r.order.to_string(),
            r.degree.to_string(),
            r.lambda2.to_string(),
            r.gap.to_string(),
            r.normalized_gap.to_string(),
        ]);
        if !r.order_matches || r.normalized_gap <= 0.0 || !r.converged {
            out.witnesses.push(json!(r));
        }
    }
    out.pass = rows.iter().all(|r| r.order_matches && r.normalized_gap > 0.0 && r.converged);
    out.min_margin = rows.iter().map(|r| r.normalized_gap).reduce(f64::min);
    out.summary = format!(
        "{} groups, smallest normalized gap {}",
        rows.len(),
        out.min_margin.map_or("n/a".into(), |g| format!("{g:.4}"))
    );
    out.details(&rows)
}

fn all(quick: bool, tol: f64) -> Result<Report> {
    let (q1, q2, q3, qs) = if quick { (30, 12, 6, vec![2u64, 3]) } else { (60, 24, 12, vec![2, 3, 4]) };
    let q_small = if quick { 20 } else { 40 };
    // zzz only samples angles below its threshold, so it keeps the full grid.
    let q_zzz = 60;
    let commands: Vec<Command> = vec![
        Command::Verify(Verify::Bz { qmax: q1, lambda: vec![1.0, 2.0, 4.0] }),
        Command::Verify(Verify::Xyz1 { qmax: q1 }),
        Command::Verify(Verify::Zzz { qmax: q_zzz, r: 4.0, kappa: 0.5 }),
        Command::Verify(Verify::Xyz2 { qmax: q1 }),
        Command::Verify(Verify::Prodnorm { qmax: q1 }),
        Command::Verify(Verify::Xsmall { qmax: q_small, delta: vec![0.1, 0.3, 0.5] }),
        Command::Verify(Verify::Smalltheta { qmax: q2, theta0: None, r: None, epsilon: None }),
        Command::Verify(Verify::Formula { qmax: q3, r: None, epsilon: None }),
        Command::Symmetry(Symmetry::Orbit { m: 4, n: 5, d: 1, identity: IdentityKind::All }),
        Command::Symmetry(Symmetry::Orbit { m: 5, n: 6, d: 2, identity: IdentityKind::All }),
        Command::Symmetry(Symmetry::Census { m: 5 }),
        Command::Symmetry(Symmetry::Spade { m: 5, d: 1 }),
        Command::Symmetry(Symmetry::Threshold { m: 5, r: "6".into(), epsilon: "1".into(), n: None, max: 30 }),
        Command::Symmetry(Symmetry::El5 { q: 5 }),
        Command::Graded(Graded::Dims { max: 10 }),
        Command::Graded(Graded::Phi),
        Command::Graded(Graded::Gram),
        Command::Graded(Graded::SosIdentity { qmax: 10 }),
        Command::Expander(Expander::Run { n: 3, q: qs, p: PChoice::One, cap: 200_000 }),
    ];
    let mut out = Report::new("all").param("quick", quick).param("tol", tol);
    out.table = Table::new(&["command", "pass", "min_margin", "exact_match"]);
    let mut parts = Vec::new();
    for c in &commands {
        let r = dispatch(c, tol)?;
        eprintln!("{} {}: {}", r.status(), r.command, r.summary);
        out.table.push(vec![
            r.command.clone(),
            r.pass.to_string(),
            r.min_margin.map(|m| m.to_string()).unwrap_or_default(),
            r.exact_match.map(|m| m.to_string()).unwrap_or_default(),
        ]);
        if !r.pass {
            out.witnesses.push(json!({"command": r.command}));
        }
        parts.push(json!({"command": r.command, "params": r.params, "pass": r.pass, "min_margin": r.min_margin, "exact_match": r.exact_match}));
    }
    out.pass = parts.iter().all(|p| p["pass"] == json!(true));
    let failed = parts.iter().filter(|p| p["pass"] != json!(true)).count();
    out.summary = format!("{} of {} checks pass", parts.len() - failed, parts.len());
    out.details(parts)
}
