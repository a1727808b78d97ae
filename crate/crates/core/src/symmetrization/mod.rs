//! Exact bookkeeping for the symmetrization argument over elementary
//! groups: formal `E_{i,j}(label)` words, the `Sq/Adj/Op` decomposition of
//! `Δ²`, orbit sums over `Sym(n)`, and the threshold calculation that lifts a
//! fixed-size inequality to all large `n`.

mod el5;
mod formal;
mod parts;

pub use el5::{el5_sweep, instantiate_el5, El5Report, El5Substitution, RelationOutcome};
pub use formal::{EdgeSymbol, FormalQuadratic, Label, Word};
pub use parts::{
    adj_expansion_identity, adj_four_term, build_parts, decomposition_identity, delta, delta2, delta_edge,
    edge_pair_census, edges, orbit_identity, orbit_sum, spade_block, spade_to_heart, stability_threshold, Edge,
    EdgeCensus, IdentityCheck, OrbitIdentity, Parts, SpadeRecord, StabilityCertificate, StabilityOutcome,
    MAX_ORBIT_N,
};
