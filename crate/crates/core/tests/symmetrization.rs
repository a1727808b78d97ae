use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use opineq_core::symmetrization::{
    adj_expansion_identity, build_parts, delta_edge, decomposition_identity, edge_pair_census, instantiate_el5, orbit_identity,
    orbit_sum, spade_to_heart, stability_threshold, EdgeSymbol, FormalQuadratic, Label, OrbitIdentity,
    StabilityCertificate, Word,
};
use proptest::prelude::*;

fn int(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Every permutation of `1..=n`, by plain recursion.
fn permutations(n: u8) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn naive_orbit_sum(xi: &FormalQuadratic, n: u8) -> FormalQuadratic {
    permutations(n).iter().fold(FormalQuadratic::zero(), |acc, s| acc.plus(&xi.permute(s)))
}

fn arb_symbol(m: u8) -> impl Strategy<Value = EdgeSymbol> {
    (1..=m, 1..m, 1u8..=2, prop::option::of(1u8..=2)).prop_map(move |(i, dj, a, b)| {
        let j = (i - 1 + dj) % m + 1;
        let label = match b {
            Some(b) => Label::product(a, b),
            None => Label::var(a),
        };
        EdgeSymbol::new(i, j, label)
    })
}

fn arb_quadratic(m: u8) -> impl Strategy<Value = FormalQuadratic> {
    prop::collection::vec((arb_symbol(m), prop::option::of(arb_symbol(m)), -3..=3i64), 0..6).prop_map(|terms| {
        let mut q = FormalQuadratic::zero();
        for (e, f, c) in terms {
            let w = match f {
                Some(f) => Word::pair(e, f),
                None => Word::letter(e),
            };
            q.add_word(w, BigInt::from(c));
        }
        q
    })
}

#[test]
fn parts_small_cases() {
    let p = build_parts(2, 1).unwrap();
    assert!(p.op.is_zero() && p.adj.is_zero());
    assert_eq!(p.delta_squared, p.sq);
    let p = build_parts(3, 2).unwrap();
    // Two E-letters per edge and variable; each E-letter carries the two
    // group elements e and e*.
    assert_eq!(p.delta.len(), 3 * 2 * 2);
    let edge_sum = [(1, 2), (1, 3), (2, 3)]
        .iter()
        .fold(FormalQuadratic::zero(), |acc, &e| acc.plus(&delta_edge(e, 2)));
    assert_eq!(edge_sum, p.delta);
    let census = edge_pair_census(4);
    assert_eq!(census.edges, 6);
    assert_eq!(census.disjoint_ordered_pairs, 6);
    assert_eq!(census.disjoint_unordered_pairs, 3);
    assert_eq!(census.adjacent_ordered_pairs, 24);
}

#[test]
fn census_by_independent_count() {
    for m in 2..=7usize {
        let c = edge_pair_census(m);
        let mut edges = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                edges.push((i, j));
            }
        }
        let (mut adj, mut dis) = (0, 0);
        for &(a, b) in &edges {
            for &(c2, d) in &edges {
                let shared = [a == c2, a == d, b == c2, b == d].iter().filter(|&&x| x).count();
                match shared {
                    0 => dis += 1,
                    1 => adj += 1,
                    _ => {}
                }
            }
        }
        assert_eq!(c.edges as usize, edges.len());
        assert_eq!(c.adjacent_ordered_pairs, adj);
        assert_eq!(c.disjoint_ordered_pairs, dis);
        assert_eq!(adj as usize, m * (m - 1) * (m - 2));
    }
}

#[test]
fn decomposition_exact() {
    for m in 1..=5 {
        for d in 1..=2 {
            assert!(decomposition_identity(m, d).unwrap().matches, "m={m} d={d}");
            let p = build_parts(m, d).unwrap();
            assert!(p.delta_squared.minus(&p.sq).minus(&p.adj).minus(&p.op).is_zero());
            assert!(adj_expansion_identity(m, d).unwrap().matches);
        }
    }
}

#[test]
fn orbit_examples() {
    let c = orbit_identity(OrbitIdentity::Delta2, 4, 5, 1).unwrap();
    assert!(c.matches);
    assert_eq!(c.scalar.as_deref(), Some("72"));
    let c = orbit_identity(OrbitIdentity::Op, 4, 5, 1).unwrap();
    assert_eq!(c.scalar.as_deref(), Some("24"));
    assert!(orbit_sum(&FormalQuadratic::zero(), 6).unwrap().is_zero());
    assert!(orbit_sum(&FormalQuadratic::zero(), 9).is_err());
}

#[test]
fn delta2_scalar_is_exact_for_all_small_pairs() {
    for m in 4..=6 {
        for n in m..=6 {
            let c = orbit_identity(OrbitIdentity::Delta2, m, n, 1).unwrap();
            let expect = (m * (m - 1)) as i64 * factorial(n - 2);
            assert!(c.matches);
            assert_eq!(c.scalar, Some(expect.to_string()));
        }
    }
}

#[test]
fn parallel_orbit_sum_matches_naive_enumeration() {
    for (m, n) in [(4, 4), (4, 5), (3, 5)] {
        let p = build_parts(m, 2).unwrap();
        for xi in [&p.delta2, &p.adj, &p.op] {
            assert_eq!(orbit_sum(xi, n).unwrap(), naive_orbit_sum(xi, n as u8));
        }
    }
}

#[test]
fn spade_multiplicities() {
    let rec = spade_to_heart(5, 1).unwrap();
    assert!(rec.block.matches && rec.target.matches && rec.op.matches);
    assert_eq!(rec.block.scalar.as_deref(), Some("2"));
    assert_eq!(rec.target.scalar.as_deref(), Some("6"));
    assert_eq!(rec.r_factor.as_deref(), Some("60"));
    assert_eq!(rec.epsilon_factor.as_deref(), Some("3"));
    let zero = spade_to_heart(5, 0).unwrap();
    assert_eq!(zero.block.lhs_terms, 0);
    assert!(zero.r_factor.is_none());
}

#[test]
fn threshold_examples() {
    let cert = StabilityCertificate::new(5, int(6), int(1)).unwrap();
    let at = stability_threshold(&cert, 15).unwrap();
    assert!(at.applies);
    assert_eq!(at.epsilon_n, BigRational::new(BigInt::from(13), BigInt::from(3)));
    assert!(!stability_threshold(&cert, 14).unwrap().applies);
    let small = StabilityCertificate::new(6, BigRational::one(), int(1)).unwrap();
    assert!((6..30).all(|n| stability_threshold(&small, n).unwrap().applies));
    for r in [1, 2] {
        let c = StabilityCertificate::new(5, int(r), int(1)).unwrap();
        assert_eq!(stability_threshold(&c, 5).unwrap().applies, r <= 1);
    }
    assert!(stability_threshold(&cert, 4).is_err());
}

#[test]
fn el5_examples() {
    let s = instantiate_el5(5, 2, 3).unwrap();
    assert!(s.check().pass);
    let zero = instantiate_el5(7, 0, 4).unwrap();
    assert!(zero.check().pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orbit_sum_is_invariant(xi in arb_quadratic(4), sigma in Just((1..=5u8).collect::<Vec<_>>()).prop_shuffle()) {
        let total = orbit_sum(&xi, 5).unwrap();
        prop_assert_eq!(total.permute(&sigma), total);
    }

    #[test]
    fn threshold_monotone_and_linear(m in 4usize..8, r in 1i64..20, e in 1i64..5, n in 8usize..60) {
        let cert = StabilityCertificate::new(m, int(r), int(e)).unwrap();
        let n = n.max(m);
        let here = stability_threshold(&cert, n).unwrap();
        let next = stability_threshold(&cert, n + 1).unwrap();
        if here.applies {
            prop_assert!(next.applies);
        }
        let slope = &next.epsilon_n - &here.epsilon_n;
        prop_assert_eq!(slope, int(e) / int(m as i64 - 2));
        prop_assert!(!here.epsilon_n.is_zero());
    }
}
