use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::formal::{EdgeSymbol, FormalQuadratic, Label};
use crate::error::{invalid, Result};

/// Largest `n` for which `Sym(n)` is enumerated.
pub const MAX_ORBIT_N: usize = 8;

/// Unordered edge `{i, j}` with `i < j`.
pub type Edge = (u8, u8);

pub fn edges(m: usize) -> Vec<Edge> {
    let m = m as u8;
    (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect()
}

fn adjacent(e: Edge, f: Edge) -> bool {
    e != f && (e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1)
}

fn disjoint(e: Edge, f: Edge) -> bool {
    e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1
}

/// `Δ_e = Σ_r (E_{i,j}(t_r) + E_{j,i}(t_r))`.
pub fn delta_edge(e: Edge, d: usize) -> FormalQuadratic {
    let mut out = FormalQuadratic::zero();
    for r in 1..=d as u8 {
        out.add_letter(EdgeSymbol::new(e.0, e.1, Label::var(r)), 1);
        out.add_letter(EdgeSymbol::new(e.1, e.0, Label::var(r)), 1);
    }
    out
}

/// `Δ_m = Σ_{i≠j} Σ_r E_{i,j}(t_r)`.
pub fn delta(m: usize, d: usize) -> FormalQuadratic {
    let mut out = FormalQuadratic::zero();
    for i in 1..=m as u8 {
        for j in (1..=m as u8).filter(|&j| j != i) {
            for r in 1..=d as u8 {
                out.add_letter(EdgeSymbol::new(i, j, Label::var(r)), 1);
            }
        }
    }
    out
}

/// `Δ^{(2)}_m = Σ_{i≠j} Σ_{r,s} E_{i,j}(t_r t_s)`; labels commute, so each
/// `r ≠ s` label is counted twice.
pub fn delta2(m: usize, d: usize) -> FormalQuadratic {
    let mut out = FormalQuadratic::zero();
    for i in 1..=m as u8 {
        for j in (1..=m as u8).filter(|&j| j != i) {
            for r in 1..=d as u8 {
                for s in 1..=d as u8 {
                    out.add_letter(EdgeSymbol::new(i, j, Label::product(r, s)), 1);
                }
            }
        }
    }
    out
}

fn pair_sum(m: usize, d: usize, keep: impl Fn(Edge, Edge) -> bool) -> FormalQuadratic {
    let es = edges(m);
    let mut out = FormalQuadratic::zero();
    for &e in &es {
        for &f in &es {
            if keep(e, f) {
                out.add_assign(&delta_edge(e, d).mul_linear(&delta_edge(f, d)));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parts {
    pub m: usize,
    pub d: usize,
    pub delta: FormalQuadratic,
    /// `Δ_m · Δ_m`, built directly from the linear element.
    pub delta_squared: FormalQuadratic,
    /// `Σ_e Δ_e²`.
    pub sq: FormalQuadratic,
    /// `Σ_{e∼f} Δ_e Δ_f` over ordered pairs of distinct edges sharing a vertex.
    pub adj: FormalQuadratic,
    /// `Σ_{e⊥f} Δ_e Δ_f` over ordered pairs of disjoint edges.
    pub op: FormalQuadratic,
    pub delta2: FormalQuadratic,
}

pub fn build_parts(m: usize, d: usize) -> Result<Parts> {
    check_size(m, d)?;
    let delta = delta(m, d);
    Ok(Parts {
        m,
        d,
        delta_squared: delta.mul_linear(&delta),
        delta,
        sq: pair_sum(m, d, |e, f| e == f),
        adj: pair_sum(m, d, adjacent),
        op: pair_sum(m, d, disjoint),
        delta2: delta2(m, d),
    })
}

fn check_size(m: usize, d: usize) -> Result<()> {
    if m > MAX_ORBIT_N {
        return invalid(format!("m = {m} exceeds {MAX_ORBIT_N}"));
    }
    if d > 9 {
        return invalid(format!("d = {d} exceeds 9 label variables"));
    }
    Ok(())
}

/// `Adj_m` written as
/// `Σ_{r,s} Σ_{i,j,k distinct} E_ij(t_r)E_jk(t_s) + E_jk(t_s)E_ij(t_r) + E_ij(t_r)E_ik(t_s) + E_jk(t_s)E_ik(t_r)`.
pub fn adj_four_term(m: usize, d: usize) -> FormalQuadratic {
    let mut out = FormalQuadratic::zero();
    let mm = m as u8;
    for i in 1..=mm {
        for j in (1..=mm).filter(|&j| j != i) {
            for k in (1..=mm).filter(|&k| k != i && k != j) {
                for r in 1..=d as u8 {
                    for s in 1..=d as u8 {
                        let e = |a, b, t| EdgeSymbol::new(a, b, Label::var(t));
                        for (u, v) in [
                            (e(i, j, r), e(j, k, s)),
                            (e(j, k, s), e(i, j, r)),
                            (e(i, j, r), e(i, k, s)),
                            (e(j, k, s), e(i, k, r)),
                        ] {
                            out.add_word(super::formal::Word::pair(u, v), BigInt::one());
                        }
                    }
                }
            }
        }
    }
    out
}

/// Visits every permutation of `1..=n` whose first entry is `first`, in
/// lexicographic order.
fn for_each_permutation_starting(n: usize, first: u8, mut f: impl FnMut(&[u8])) {
    let mut perm: Vec<u8> = std::iter::once(first)
        .chain((1..=n as u8).filter(|&v| v != first))
        .collect();
    loop {
        f(&perm);
        // next_permutation on perm[1..]
        let tail = &mut perm[1..];
        let Some(i) = (0..tail.len().saturating_sub(1)).rev().find(|&i| tail[i] < tail[i + 1]) else {
            return;
        };
        let j = (i + 1..tail.len()).rev().find(|&j| tail[j] > tail[i]).expect("successor exists");
        tail.swap(i, j);
        tail[i + 1..].reverse();
    }
}

/// `Σ_{σ∈Sym(n)} σ(ξ)` by full enumeration.
pub fn orbit_sum(xi: &FormalQuadratic, n: usize) -> Result<FormalQuadratic> {
    if n > MAX_ORBIT_N {
        return invalid(format!("n = {n} exceeds {MAX_ORBIT_N}"));
    }
    if (xi.max_index() as usize) > n {
        return invalid(format!("element uses index {} > n = {n}", xi.max_index()));
    }
    if n == 0 || xi.is_zero() {
        return Ok(FormalQuadratic::zero());
    }
    let partials: Vec<FormalQuadratic> = (1..=n as u8)
        .into_par_iter()
        .map(|first| {
            let mut acc = FormalQuadratic::zero();
            for_each_permutation_starting(n, first, |sigma| acc.add_assign(&xi.permute(sigma)));
            acc
        })
        .collect();
    let mut out = FormalQuadratic::zero();
    for p in &partials {
        out.add_assign(p);
    }
    Ok(out)
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, v| acc * v)
}

fn falling(m: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(m as i64 - i as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitIdentity {
    Delta2,
    Adj,
    Op,
}

impl OrbitIdentity {
    pub const ALL: [OrbitIdentity; 3] = [OrbitIdentity::Delta2, OrbitIdentity::Adj, OrbitIdentity::Op];

    pub fn name(self) -> &'static str {
        match self {
            OrbitIdentity::Delta2 => "orbit_delta2",
            OrbitIdentity::Adj => "orbit_adj",
            OrbitIdentity::Op => "orbit_op",
        }
    }

    /// `m(m-1)(n-2)!`, `m(m-1)(m-2)(n-3)!`, `m(m-1)(m-2)(m-3)(n-4)!`.
    pub fn expected_scalar(self, m: usize, n: usize) -> BigInt {
        let k = match self {
            OrbitIdentity::Delta2 => 2,
            OrbitIdentity::Adj => 3,
            OrbitIdentity::Op => 4,
        };
        if n < k {
            return BigInt::zero();
        }
        falling(m, k) * factorial(n - k)
    }

    fn part(self, p: &Parts) -> &FormalQuadratic {
        match self {
            OrbitIdentity::Delta2 => &p.delta2,
            OrbitIdentity::Adj => &p.adj,
            OrbitIdentity::Op => &p.op,
        }
    }
}

/// Outcome of an exact identity check between formal sums.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Exact ratio `lhs / rhs` when the two sides are proportional, as `p` or `p/q`.
    pub scalar: Option<String>,
    pub expected_scalar: Option<String>,
}

fn ratio_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        r.to_string()
    }
}

/// `Σ_σ σ(P_m) = c·P_n` for `P ∈ {Δ^{(2)}, Adj, Op}`.
pub fn orbit_identity(kind: OrbitIdentity, m: usize, n: usize, d: usize) -> Result<IdentityCheck> {
    if m > n {
        return invalid(format!("need m ≤ n, got m = {m}, n = {n}"));
    }
    let small = build_parts(m, d)?;
    let large = build_parts(n, d)?;
    let lhs = orbit_sum(kind.part(&small), n)?;
    let rhs = kind.part(&large);
    let expected = kind.expected_scalar(m, n);
    let scalar = lhs.scalar_multiple_of(rhs);
    Ok(IdentityCheck {
        identity: kind.name().to_string(),
        m,
        n,
        d,
        lhs_terms: lhs.len(),
        rhs_terms: rhs.len(),
        matches: lhs == rhs.scale(&expected),
        scalar: scalar.as_ref().map(ratio_string),
        expected_scalar: Some(expected.to_string()),
    })
}

/// `Δ_m² = Sq_m + Adj_m + Op_m`.
pub fn decomposition_identity(m: usize, d: usize) -> Result<IdentityCheck> {
    let p = build_parts(m, d)?;
    let rhs = p.sq.plus(&p.adj).plus(&p.op);
    Ok(IdentityCheck {
        identity: "square_decomposition".into(),
        m,
        n: m,
        d,
        lhs_terms: p.delta_squared.len(),
        rhs_terms: rhs.len(),
        matches: p.delta_squared == rhs,
        scalar: p.delta_squared.scalar_multiple_of(&rhs).as_ref().map(ratio_string),
        expected_scalar: Some("1".into()),
    })
}

/// `Adj_m` equals its four-term expansion.
pub fn adj_expansion_identity(m: usize, d: usize) -> Result<IdentityCheck> {
    let p = build_parts(m, d)?;
    let four = adj_four_term(m, d);
    Ok(IdentityCheck {
        identity: "adj_four_term".into(),
        m,
        n: m,
        d,
        lhs_terms: p.adj.len(),
        rhs_terms: four.len(),
        matches: p.adj == four,
        scalar: p.adj.scalar_multiple_of(&four).as_ref().map(ratio_string),
        expected_scalar: Some("1".into()),
    })
}

/// Counts of edges and edge pairs of the complete graph on `m` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCensus {
    pub m: usize,
    pub edges: u64,
    pub adjacent_ordered_pairs: u64,
    pub adjacent_unordered_pairs: u64,
    pub disjoint_ordered_pairs: u64,
    pub disjoint_unordered_pairs: u64,
    /// Reference closed forms `m(m-1)/2`, `m(m-1)(m-2)/6`, `m(m-1)(m-2)(m-3)/4`.
    pub reference_edges: String,
    pub reference_adjacent: String,
    pub reference_disjoint: String,
    /// Which pair convention (if any) matches each reference form.
    pub edges_match: bool,
    pub adjacent_matches: Vec<String>,
    pub disjoint_matches: Vec<String>,
}

pub fn edge_pair_census(m: usize) -> EdgeCensus {
    let es = edges(m);
    let count = |keep: fn(Edge, Edge) -> bool| -> u64 {
        es.iter()
            .flat_map(|&e| es.iter().map(move |&f| (e, f)))
            .filter(|&(e, f)| keep(e, f))
            .count() as u64
    };
    let adj = count(adjacent);
    let dis = count(disjoint);
    let mi = m as i64;
    let reference = |num: i64, den: i64| BigRational::new(BigInt::from(num), BigInt::from(den));
    let r_edges = reference(mi * (mi - 1), 2);
    let r_adj = reference(mi * (mi - 1) * (mi - 2), 6);
    let r_dis = reference(mi * (mi - 1) * (mi - 2) * (mi - 3), 4);
    let matches = |r: &BigRational, ordered: u64, unordered: u64| {
        let mut v = Vec::new();
        if *r == BigRational::from(BigInt::from(ordered)) {
            v.push("ordered".to_string());
        }
        if *r == BigRational::from(BigInt::from(unordered)) {
            v.push("unordered".to_string());
        }
        v
    };
    EdgeCensus {
        m,
        edges: es.len() as u64,
        adjacent_ordered_pairs: adj,
        adjacent_unordered_pairs: adj / 2,
        disjoint_ordered_pairs: dis,
        disjoint_unordered_pairs: dis / 2,
        edges_match: r_edges == BigRational::from(BigInt::from(es.len())),
        adjacent_matches: matches(&r_adj, adj, adj / 2),
        disjoint_matches: matches(&r_dis, dis, dis / 2),
        reference_edges: ratio_string(&r_edges),
        reference_adjacent: ratio_string(&r_adj),
        reference_disjoint: ratio_string(&r_dis),
    }
}

/// Multiplicities obtained by summing the local four-index inequality
/// `E_ij(t_r)E_jk(t_s) + E_jk(t_s)E_ij(t_r) + E_ij(t_r)E_il(t_s) + E_jk(t_s)E_lk(t_r) + R·Op_m ⪰ ε·E_ik(t_r t_s)`
/// over `Sym(m)` and over `r, s`, with `(i,j,k,l) = (1,2,3,4)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpadeRecord {
    pub m: usize,
    pub d: usize,
    /// Orbit sum of the four-term block equals this multiple of `Adj_m`.
    pub block: IdentityCheck,
    /// Orbit sum of `Σ_{r,s} E_13(t_r t_s)` equals this multiple of `Δ^{(2)}_m`.
    pub target: IdentityCheck,
    /// Orbit sum of `Op_m` equals this multiple of `Op_m`.
    pub op: IdentityCheck,
    /// After dividing by the block multiplicity: `Adj_m + R'·Op_m ⪰ ε'·Δ^{(2)}_m`
    /// with `R' = r_factor·R` and `ε' = epsilon_factor·ε`.
    pub r_factor: Option<String>,
    pub epsilon_factor: Option<String>,
}

pub fn spade_block(d: usize) -> FormalQuadratic {
    let mut out = FormalQuadratic::zero();
    let e = |a, b, t| EdgeSymbol::new(a, b, Label::var(t));
    for r in 1..=d as u8 {
        for s in 1..=d as u8 {
            for (u, v) in [
                (e(1, 2, r), e(2, 3, s)),
                (e(2, 3, s), e(1, 2, r)),
                (e(1, 2, r), e(1, 4, s)),
                (e(2, 3, s), e(4, 3, r)),
            ] {
                out.add_word(super::formal::Word::pair(u, v), BigInt::one());
            }
        }
    }
    out
}

pub fn spade_to_heart(m: usize, d: usize) -> Result<SpadeRecord> {
    if !(4..=MAX_ORBIT_N).contains(&m) {
        return invalid(format!("m must lie in 4..={MAX_ORBIT_N}, got {m}"));
    }
    let parts = build_parts(m, d)?;
    let mut target = FormalQuadratic::zero();
    for r in 1..=d as u8 {
        for s in 1..=d as u8 {
            target.add_letter(EdgeSymbol::new(1, 3, Label::product(r, s)), 1);
        }
    }
    let check = |name: &str, local: &FormalQuadratic, global: &FormalQuadratic, expected: BigInt| -> Result<(IdentityCheck, Option<BigRational>)> {
        let lhs = orbit_sum(local, m)?;
        let scalar = lhs.scalar_multiple_of(global);
        let rec = IdentityCheck {
            identity: name.to_string(),
            m,
            n: m,
            d,
            lhs_terms: lhs.len(),
            rhs_terms: global.len(),
            matches: lhs == global.scale(&expected),
            scalar: scalar.as_ref().map(ratio_string),
            expected_scalar: Some(expected.to_string()),
        };
        Ok((rec, scalar))
    };
    let (block, c_block) = check("spade_block", &spade_block(d), &parts.adj, factorial(m - 3))?;
    let (tgt, c_target) = check("spade_target", &target, &parts.delta2, factorial(m - 2))?;
    let (op, c_op) = check("spade_op", &parts.op, &parts.op, factorial(m))?;
    let usable = |c: &Option<BigRational>| c.as_ref().filter(|_| d > 0).cloned();
    let (r_factor, epsilon_factor) = match (usable(&c_block), usable(&c_target), usable(&c_op)) {
        (Some(b), Some(t), Some(o)) if !b.is_zero() => (Some(ratio_string(&(o / &b))), Some(ratio_string(&(t / &b)))),
        _ => (None, None),
    };
    Ok(SpadeRecord {
        m,
        d,
        block,
        target: tgt,
        op,
        r_factor,
        epsilon_factor,
    })
}

/// The hypothesis `Adj_m + R·Op_m ⪰ ε·Δ^{(2)}_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityCertificate {
    pub m: usize,
    #[serde(serialize_with = "ser_rational")]
    pub r: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub epsilon: BigRational,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityOutcome {
    pub m: usize,
    pub n: usize,
    /// `(m-3)R/(n-3)`, the coefficient of `Op_n`.
    #[serde(serialize_with = "ser_rational")]
    pub op_coefficient: BigRational,
    pub applies: bool,
    /// `(n-2)ε/(m-2)`.
    #[serde(serialize_with = "ser_rational")]
    pub epsilon_n: BigRational,
    /// `epsilon_n / n`, so that `Δ_n² ⪰ n·ε'·Δ^{(2)}_n` when `applies`.
    #[serde(serialize_with = "ser_rational")]
    pub epsilon_prime: BigRational,
}

impl StabilityCertificate {
    pub fn new(m: usize, r: BigRational, epsilon: BigRational) -> Result<Self> {
        if m < 4 {
            return invalid(format!("m must be at least 4, got {m}"));
        }
        if r <= BigRational::zero() || epsilon <= BigRational::zero() {
            return invalid("R and ε must be positive");
        }
        Ok(StabilityCertificate { m, r, epsilon })
    }

    /// Smallest `n ≥ m` with `(m-3)R ≤ n-3`.
    pub fn min_n(&self) -> usize {
        let need = (&self.r * BigRational::from(BigInt::from(self.m - 3))).ceil().to_integer();
        let n = need.to_usize().unwrap_or(usize::MAX).saturating_add(3);
        n.max(self.m)
    }
}

pub fn stability_threshold(cert: &StabilityCertificate, n: usize) -> Result<StabilityOutcome> {
    if n < cert.m {
        return invalid(format!("need n ≥ m = {}, got {n}", cert.m));
    }
    let int = |v: usize| BigRational::from(BigInt::from(v));
    let op_coefficient = &cert.r * int(cert.m - 3) / int(n - 3);
    let epsilon_n = &cert.epsilon * int(n - 2) / int(cert.m - 2);
    Ok(StabilityOutcome {
        m: cert.m,
        n,
        applies: op_coefficient <= BigRational::one(),
        epsilon_prime: &epsilon_n / int(n),
        op_coefficient,
        epsilon_n,
    })
}
