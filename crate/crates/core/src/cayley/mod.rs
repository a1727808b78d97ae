//! Cayley graphs of `SL_n(ℤ/qℤ)` with elementary generators `e_{i,j}(±p)`
//! and their spectral gaps.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg::HermitianOperator;

pub const DEFAULT_ORDER_CAP: usize = 200_000;
/// Graphs up to this many vertices use a dense eigensolver.
pub const DENSE_VERTEX_LIMIT: usize = 4000;
pub const POWER_RESIDUAL_TOL: f64 = 1e-10;
pub const POWER_MAX_ITERATIONS: usize = 50_000;
const POWER_SEED: u64 = 0x5eed_cafe;

/// Undirected `degree`-regular graph given by neighbor lists
/// (`neighbors[v*degree + g]`), with multi-edges and loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularGraph {
    degree: usize,
    neighbors: Vec<u32>,
}

impl RegularGraph {
    /// Checks that every neighbor index is in range and that the adjacency
    /// (with multiplicity) is symmetric.
    pub fn new(degree: usize, neighbors: Vec<u32>) -> Result<Self> {
        if degree == 0 || !neighbors.len().is_multiple_of(degree) {
            return invalid("neighbor list length must be a positive multiple of the degree");
        }
        let n = neighbors.len() / degree;
        if neighbors.iter().any(|&w| w as usize >= n) {
            return invalid("neighbor index out of range");
        }
        let g = RegularGraph { degree, neighbors };
        let mut count: HashMap<(u32, u32), i64> = HashMap::new();
        for v in 0..n {
            for &w in g.neighbors_of(v) {
                *count.entry((v as u32, w)).or_default() += 1;
            }
        }
        if count.iter().any(|(&(a, b), &c)| count.get(&(b, a)) != Some(&c)) {
            return invalid("adjacency is not symmetric");
        }
        Ok(g)
    }

    pub fn complete(m: usize) -> Result<Self> {
        let mut nb = Vec::with_capacity(m * m.saturating_sub(1));
        for v in 0..m {
            nb.extend((0..m).filter(|&w| w != v).map(|w| w as u32));
        }
        Self::new(m.saturating_sub(1), nb)
    }

    pub fn vertex_count(&self) -> usize {
        self.neighbors.len() / self.degree
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn neighbors_of(&self, v: usize) -> &[u32] {
        &self.neighbors[v * self.degree..(v + 1) * self.degree]
    }

    pub fn components(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            comps += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in self.neighbors_of(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w as usize);
                    }
                }
            }
        }
        comps
    }

    /// The same graph with vertex `v` renamed `perm[v]`.
    pub fn relabeled(&self, perm: &[u32]) -> Self {
        let n = self.vertex_count();
        let mut nb = vec![0u32; self.neighbors.len()];
        for v in 0..n {
            let nv = perm[v] as usize;
            for (g, &w) in self.neighbors_of(v).iter().enumerate() {
                nb[nv * self.degree + g] = perm[w as usize];
            }
        }
        RegularGraph {
            degree: self.degree,
            neighbors: nb,
        }
    }

    fn dense_adjacency(&self) -> Vec<f64> {
        let n = self.vertex_count();
        let mut a = vec![0.0; n * n];
        for v in 0..n {
            for &w in self.neighbors_of(v) {
                a[v * n + w as usize] += 1.0;
            }
        }
        a
    }

    /// `y = (A + dI) x`.
    fn shifted_apply(&self, x: &[f64], y: &mut [f64]) {
        let d = self.degree as f64;
        for (v, out) in y.iter_mut().enumerate() {
            let s: f64 = self.neighbors_of(v).iter().map(|&w| x[w as usize]).sum();
            *out = s + d * x[v];
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GapMethod {
    Auto,
    Dense,
    Power,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralGap {
    /// Second largest adjacency eigenvalue.
    pub lambda2: f64,
    /// `degree - lambda2`.
    pub gap: f64,
    pub normalized_gap: f64,
    pub method: GapMethod,
    pub iterations: usize,
    pub converged: bool,
}

pub fn spectral_gap(g: &RegularGraph) -> Result<SpectralGap> {
    spectral_gap_with(g, GapMethod::Auto)
}

pub fn spectral_gap_with(g: &RegularGraph, method: GapMethod) -> Result<SpectralGap> {
    let n = g.vertex_count();
    if n < 2 {
        return invalid("spectral gap needs at least two vertices");
    }
    let comps = g.components();
    if comps > 1 {
        return Err(Error::Disconnected { components: comps });
    }
    let d = g.degree() as f64;
    let method = match method {
        GapMethod::Auto if n <= DENSE_VERTEX_LIMIT => GapMethod::Dense,
        GapMethod::Auto => GapMethod::Power,
        m => m,
    };
    let (lambda2, iterations, converged) = match method {
        GapMethod::Dense => {
            let vals = HermitianOperator::from_real_symmetric(n, g.dense_adjacency())?.eigenvalues()?;
            (vals[n - 2], 0, true)
        }
        _ => {
            let (mu, it, ok) = deflated_power_iteration(g);
            (mu - d, it, ok)
        }
    };
    Ok(SpectralGap {
        lambda2,
        gap: d - lambda2,
        normalized_gap: (d - lambda2) / d,
        method,
        iterations,
        converged,
    })
}

/// Top eigenvalue of `A + dI` on the complement of the constant vector.
/// The shift makes the operator positive semidefinite, so the dominant
/// eigenvalue there is `λ₂ + d`.
fn deflated_power_iteration(g: &RegularGraph) -> (f64, usize, bool) {
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(POWER_SEED);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut y = vec![0.0; n];
    let deflate = |v: &mut [f64]| {
        let mean = v.iter().sum::<f64>() / n as f64;
        v.iter_mut().for_each(|e| *e -= mean);
    };
    let normalize = |v: &mut [f64]| {
        let nv = v.iter().map(|e| e * e).sum::<f64>().sqrt();
        v.iter_mut().for_each(|e| *e /= nv);
    };
    deflate(&mut x);
    normalize(&mut x);
    let mut mu = 0.0;
    for it in 1..=POWER_MAX_ITERATIONS {
        g.shifted_apply(&x, &mut y);
        deflate(&mut y);
        mu = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
        let residual = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - mu * a) * (b - mu * a))
            .sum::<f64>()
            .sqrt();
        std::mem::swap(&mut x, &mut y);
        normalize(&mut x);
        if residual <= POWER_RESIDUAL_TOL * (2.0 * g.degree() as f64) {
            return (mu, it, true);
        }
    }
    (mu, POWER_MAX_ITERATIONS, false)
}

/// Cayley graph of the subgroup of `SL_n(ℤ/qℤ)` generated by
/// `{e_{i,j}(p), e_{i,j}(-p)}` (distinct matrices only), vertices in BFS
/// order from the identity.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub n: usize,
    pub q: u64,
    pub p: u64,
    /// Base-`q` encoding of each vertex matrix (row-major, most significant first).
    pub vertices: Vec<u64>,
    pub graph: RegularGraph,
}

impl CayleyGraph {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn decode(&self, v: usize) -> Vec<u64> {
        decode(self.vertices[v], self.n, self.q)
    }
}

fn encode(m: &[u64], q: u64) -> u64 {
    m.iter().fold(0, |acc, &e| acc * q + e)
}

fn decode(mut code: u64, n: usize, q: u64) -> Vec<u64> {
    let mut m = vec![0; n * n];
    for slot in m.iter_mut().rev() {
        *slot = code % q;
        code /= q;
    }
    m
}

pub fn enumerate_group(n: usize, q: u64, p: u64) -> Result<CayleyGraph> {
    enumerate_group_with_cap(n, q, p, DEFAULT_ORDER_CAP)
}

pub fn enumerate_group_with_cap(n: usize, q: u64, p: u64, cap: usize) -> Result<CayleyGraph> {
    if !(2..=3).contains(&n) {
        return invalid(format!("matrix size must be 2 or 3, got {n}"));
    }
    if q == 0 {
        return invalid("modulus must be positive");
    }
    if p.gcd(&q) != 1 {
        return invalid(format!("p = {p} is not coprime to q = {q}"));
    }
    if (q as f64).powi((n * n) as i32) >= 2f64.powi(63) {
        return invalid(format!("q = {q} too large to encode {n}×{n} matrices"));
    }
    let mut identity = vec![0u64; n * n];
    for i in 0..n {
        identity[i * n + i] = 1 % q;
    }
    // Right multiplication by e_{i,j}(r) adds r·(column i) to column j.
    let mut gens: Vec<(usize, usize, u64)> = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            for r in [p % q, (q - p % q) % q] {
                if !gens.contains(&(i, j, r)) {
                    gens.push((i, j, r));
                }
            }
        }
    }
    let degree = gens.len();
    let mut index: HashMap<u64, u32> = HashMap::new();
    let mut vertices = vec![encode(&identity, q)];
    index.insert(vertices[0], 0);
    let mut neighbors: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < vertices.len() {
        let m = decode(vertices[head], n, q);
        for &(i, j, r) in &gens {
            let mut w = m.clone();
            for row in 0..n {
                w[row * n + j] = (w[row * n + j] + r * m[row * n + i]) % q;
            }
            let code = encode(&w, q);
            let next = vertices.len() as u32;
            let id = *index.entry(code).or_insert_with(|| {
                vertices.push(code);
                next
            });
            if vertices.len() > cap {
                return Err(Error::GroupOrderCap {
                    cap,
                    reached: vertices.len(),
                });
            }
            neighbors.push(id);
        }
        head += 1;
    }
    Ok(CayleyGraph {
        n,
        q,
        p,
        vertices,
        graph: RegularGraph { degree, neighbors },
    })
}

/// `|SL_n(ℤ/qℤ)| = Π_{p^k ‖ q} p^{(k-1)(n²-1)} · p^{n(n-1)/2} Π_{i=2}^{n} (p^i - 1)`.
pub fn classical_sl_order(n: u32, q: u64) -> BigUint {
    let mut order = BigUint::from(1u32);
    let mut rest = q;
    let mut prime = 2u64;
    while rest > 1 {
        if prime * prime > rest {
            prime = rest;
        }
        if rest.is_multiple_of(prime) {
            let mut k = 0u32;
            while rest.is_multiple_of(prime) {
                rest /= prime;
                k += 1;
            }
            let pb = BigUint::from(prime);
            let mut local = pb.pow((k - 1) * (n * n - 1)) * pb.pow(n * (n - 1) / 2);
            for i in 2..=n {
                local *= pb.pow(i) - 1u32;
            }
            order *= local;
        }
        prime += 1;
    }
    order
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PRule {
    /// Only `p = 1`.
    One,
    /// Every `p` coprime to `q` up to sign (`p ≤ q - p`).
    Coprime,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyRow {
    pub n: usize,
    pub q: u64,
    pub p: u64,
    pub order: usize,
    pub expected_order: String,
    pub order_matches: bool,
    pub degree: usize,
    pub lambda2: f64,
    pub gap: f64,
    pub normalized_gap: f64,
    pub method: GapMethod,
    pub converged: bool,
}

/// Values of `p` used for modulus `q`.
pub fn p_values(q: u64, rule: &PRule) -> Vec<u64> {
    match rule {
        PRule::One => vec![1],
        PRule::Coprime => (1..q.max(2)).filter(|&p| p.gcd(&q) == 1 && p <= q - p).collect(),
    }
}

pub fn family_report(n: usize, qs: &[u64], rule: &PRule, cap: usize) -> Result<Vec<FamilyRow>> {
    if qs.iter().any(|&q| q < 2) {
        return invalid("family moduli must be at least 2");
    }
    let jobs: Vec<(u64, u64)> = qs
        .iter()
        .flat_map(|&q| {
            let mut ps = p_values(q, rule);
            if ps.is_empty() {
                ps.push(1);
            }
            ps.into_iter().map(move |p| (q, p))
        })
        .collect();
    jobs.par_iter()
        .map(|&(q, p)| {
            let g = enumerate_group_with_cap(n, q, p, cap)?;
            let gap = spectral_gap(&g.graph)?;
            let expected = classical_sl_order(n as u32, q);
            Ok(FamilyRow {
                n,
                q,
                p,
                order: g.order(),
                order_matches: expected == BigUint::from(g.order()),
                expected_order: expected.to_string(),
                degree: g.graph.degree(),
                lambda2: gap.lambda2,
                gap: gap.gap,
                normalized_gap: gap.normalized_gap,
                method: gap.method,
                converged: gap.converged,
            })
        })
        .collect()
}
