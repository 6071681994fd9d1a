//! Exact maximum average degree.
//!
//! `mad(G)` is the largest value of `2·e(H)/v(H)` over nonempty subgraphs `H`.
//! Induced subgraphs suffice, so every routine here works with vertex sets
//! and counts the edges inside them.
//!
//! [`mad_exact`] answers with a max-flow feasibility test: for a degree bound
//! `p/q`, a set `S` with `2·e(S)/|S| > p/q` exists iff the maximum closure of
//! `2q·e(S) − p·|S|` is positive. Starting from the density of the whole graph
//! it repeatedly jumps to the density of the best set found, which is an
//! exact Newton iteration over the finitely many achievable densities.
//! [`mad_bruteforce`] enumerates subsets and exists for cross-checking.

use thiserror::Error;

use crate::flow::{FlowNetwork, INFINITE};
use crate::graph::{Multigraph, VertexId};
use crate::rational::Rational;

/// Largest vertex count [`mad_bruteforce`] accepts.
pub const BRUTEFORCE_MAX_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("brute force limited to {BRUTEFORCE_MAX_VERTICES} vertices, graph has {0}")]
    TooLarge(usize),
    #[error("threshold needs k >= 1 and d >= 1, got k = {k}, d = {d}")]
    BadParameters { k: usize, d: usize },
}

/// A vertex set together with the number of edges it induces and its
/// average degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityWitness {
    pub vertices: Vec<VertexId>,
    pub edge_count: usize,
    pub density: Rational,
}

impl DensityWitness {
    /// Recounts the induced edges of `vertices` in `g`. Duplicates are
    /// dropped and the list is sorted.
    ///
    /// Panics on an empty vertex set.
    pub fn from_vertices(g: &Multigraph, mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        assert!(!vertices.is_empty(), "density witness needs a vertex");
        let edge_count = g.induced_edge_count(&vertices);
        let density = Rational::average_degree(edge_count, vertices.len());
        DensityWitness {
            vertices,
            edge_count,
            density,
        }
    }
}

/// `2k + 2d/(d+k+1)`, the largest maximum average degree for which a
/// decomposition with special part bounded by `d` is guaranteed.
pub fn threshold(k: usize, d: usize) -> Result<Rational, DensityError> {
    if k < 1 || d < 1 {
        return Err(DensityError::BadParameters { k, d });
    }
    let (k, d) = (k as i64, d as i64);
    Ok(Rational::from_integer(2 * k) + Rational::new(2 * d, d + k + 1))
}

/// Exhaustive maximum average degree over all nonempty vertex subsets.
///
/// Among subsets of equal density the one with the smallest bitmask wins.
pub fn mad_bruteforce(g: &Multigraph) -> Result<DensityWitness, DensityError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(DensityError::EmptyGraph);
    }
    if n > BRUTEFORCE_MAX_VERTICES {
        return Err(DensityError::TooLarge(n));
    }
    let masks: Vec<u32> = g.edges().map(|(_, u, v)| (1 << u) | (1 << v)).collect();
    let mut best: Option<(Rational, u32, usize)> = None;
    for set in 1u32..(1 << n) {
        let edges = masks.iter().filter(|&&m| m & set == m).count();
        let density = Rational::average_degree(edges, set.count_ones() as usize);
        if best.is_none_or(|(d, _, _)| density > d) {
            best = Some((density, set, edges));
        }
    }
    let (density, set, edge_count) = best.expect("n >= 1");
    Ok(DensityWitness {
        vertices: (0..n).filter(|&v| set & (1 << v) != 0).collect(),
        edge_count,
        density,
    })
}

/// Exact maximum average degree with a densest vertex set.
///
/// A graph without edges yields the witness `{0}` with density 0.
pub fn mad_exact(g: &Multigraph) -> Result<DensityWitness, DensityError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(DensityError::EmptyGraph);
    }
    if g.edge_count() == 0 {
        return Ok(DensityWitness::from_vertices(g, vec![0]));
    }
    let mut best = DensityWitness::from_vertices(g, (0..n).collect());
    while let Some(denser) = denser_than(g, best.density) {
        let next = DensityWitness::from_vertices(g, denser);
        debug_assert!(next.density > best.density);
        best = next;
    }
    Ok(best)
}

/// Answer of [`check_mad_at_most`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MadCheck {
    /// `mad(g) <= bound`.
    AtMost,
    /// A set whose average degree exceeds the bound.
    Exceeds(DensityWitness),
}

impl MadCheck {
    pub fn is_at_most(&self) -> bool {
        matches!(self, MadCheck::AtMost)
    }
}

/// Decides `mad(g) <= bound` with a single flow computation.
pub fn check_mad_at_most(g: &Multigraph, bound: Rational) -> MadCheck {
    if g.vertex_count() == 0 {
        return MadCheck::AtMost;
    }
    if bound < Rational::ZERO {
        return MadCheck::Exceeds(DensityWitness::from_vertices(g, vec![0]));
    }
    match denser_than(g, bound) {
        None => MadCheck::AtMost,
        Some(vertices) => MadCheck::Exceeds(DensityWitness::from_vertices(g, vertices)),
    }
}

/// A vertex set with average degree strictly above `bound` (which must be
/// nonnegative), or `None` if there is none. The set returned maximizes
/// `2q·e(S) − p·|S|` for `bound = p/q` and is the smallest such maximizer.
fn denser_than(g: &Multigraph, bound: Rational) -> Option<Vec<VertexId>> {
    debug_assert!(bound >= Rational::ZERO);
    let (n, m) = (g.vertex_count(), g.edge_count());
    if m == 0 {
        return None;
    }
    let (p, q) = (bound.numer(), bound.denom());
    let source = n + m;
    let sink = source + 1;
    let mut net = FlowNetwork::new(n + m + 2);
    for (e, u, v) in g.edges() {
        net.add_arc(source, n + e, 2 * q);
        net.add_arc(n + e, u, INFINITE);
        net.add_arc(n + e, v, INFINITE);
    }
    for v in 0..n {
        if p > 0 {
            net.add_arc(v, sink, p);
        }
    }
    let flow = net.max_flow(source, sink);
    if flow >= 2 * q * m as i64 {
        return None;
    }
    let side = net.source_side(source);
    let set: Vec<VertexId> = (0..n).filter(|&v| side[v]).collect();
    debug_assert!(!set.is_empty());
    Some(set)
}
