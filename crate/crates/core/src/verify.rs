//! Independent checks for decompositions and density certificates.
//!
//! Everything here recomputes from the raw [`Multigraph`] with its own
//! union-find and never looks at orientations or colourings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{Decomposition, Params};
use crate::density::threshold;
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::rational::Rational;

/// A vertex set whose induced average degree exceeds `claimed_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityCertificate {
    pub vertices: Vec<VertexId>,
    pub edge_count: usize,
    pub density: Rational,
    pub claimed_bound: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionViolation {
    #[error("expected {expected} parts, found {got}")]
    PartCount { expected: usize, got: usize },
    #[error("special index {index} is out of range")]
    SpecialIndex { index: usize },
    #[error("part {part} lists edge {edge}, which does not exist")]
    UnknownEdge { part: usize, edge: EdgeId },
    #[error("edge {edge} appears in parts {first} and {second}")]
    Duplicate {
        edge: EdgeId,
        first: usize,
        second: usize,
    },
    #[error("edge {edge} is in no part")]
    Missing { edge: EdgeId },
    #[error("part {part} has a component with {edges} edges on {vertices} vertices (containing vertex {vertex})")]
    NotPseudoforest {
        part: usize,
        vertex: VertexId,
        edges: usize,
        vertices: usize,
    },
    #[error("special part has a component with {edges} edges, more than {d} (containing vertex {vertex})")]
    LargeComponent {
        vertex: VertexId,
        edges: usize,
        d: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateViolation {
    #[error("certificate has no vertices")]
    Empty,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("vertex {0} is listed twice")]
    DuplicateVertex(VertexId),
    #[error("certificate claims {claimed} induced edges, recount gives {actual}")]
    EdgeCount { claimed: usize, actual: usize },
    #[error("certificate claims density {claimed}, recount gives {actual}")]
    Density { claimed: Rational, actual: Rational },
    #[error("certificate claims bound {claimed}, parameters give {expected}")]
    Bound {
        claimed: Rational,
        expected: Rational,
    },
    #[error("density {density} does not exceed {bound}")]
    NotAboveBound { density: Rational, bound: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteForceError {
    #[error("(k + 1)^m exceeds {limit} for k = {k}, m = {m}")]
    TooLarge { k: usize, m: usize, limit: u64 },
}

pub const BRUTEFORCE_LIMIT: u64 = 10_000_000;

/// Union-find with per-component edge counts and undo.
struct Forests {
    parent: Vec<usize>,
    size: Vec<usize>,
    edges: Vec<usize>,
    history: Vec<(Option<usize>, usize)>,
}

impl Forests {
    fn new(n: usize) -> Self {
        Forests {
            parent: (0..n).collect(),
            size: vec![1; n],
            edges: vec![0; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Adds `u v` if the component stays a pseudoforest with at most `cap`
    /// edges.
    fn try_add(&mut self, u: usize, v: usize, cap: usize) -> bool {
        let (a, b) = (self.find(u), self.find(v));
        if a == b {
            let e = self.edges[a] + 1;
            if e > self.size[a] || e > cap {
                return false;
            }
            self.edges[a] = e;
            self.history.push((None, a));
        } else {
            let e = self.edges[a] + self.edges[b] + 1;
            if e > self.size[a] + self.size[b] || e > cap {
                return false;
            }
            let (big, small) = if self.size[a] >= self.size[b] {
                (a, b)
            } else {
                (b, a)
            };
            self.parent[small] = big;
            self.size[big] += self.size[small];
            self.edges[big] = e;
            self.history.push((Some(small), big));
        }
        true
    }

    fn undo(&mut self) {
        match self.history.pop() {
            Some((None, a)) => self.edges[a] -= 1,
            Some((Some(small), big)) => {
                self.size[big] -= self.size[small];
                self.edges[big] -= self.edges[small] + 1;
                self.parent[small] = small;
            }
            None => {}
        }
    }
}

/// `(vertex, edges, vertices)` for each connected component of `edges` with
/// at least one edge.
fn components(g: &Multigraph, edges: &[EdgeId]) -> Vec<(VertexId, usize, usize)> {
    let mut f = Forests::new(g.vertex_count());
    for &e in edges {
        let (u, v) = g.endpoints(e);
        let (a, b) = (f.find(u), f.find(v));
        if a == b {
            f.edges[a] += 1;
        } else {
            f.parent[b] = a;
            f.size[a] += f.size[b];
            f.edges[a] += f.edges[b] + 1;
        }
    }
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        if f.parent[v] == v && f.edges[v] > 0 {
            let first = (0..g.vertex_count()).find(|&w| f.find(w) == v).unwrap_or(v);
            out.push((first, f.edges[v], f.size[v]));
        }
    }
    out.sort_unstable();
    out
}

/// Every connected component of the edge set has at most as many edges as
/// vertices.
pub fn is_pseudoforest(g: &Multigraph, edges: &[EdgeId]) -> bool {
    components(g, edges).iter().all(|&(_, e, v)| e <= v)
}

pub fn verify_decomposition(
    g: &Multigraph,
    dec: &Decomposition,
    params: &Params,
) -> Result<(), DecompositionViolation> {
    if dec.parts.len() != params.k + 1 {
        return Err(DecompositionViolation::PartCount {
            expected: params.k + 1,
            got: dec.parts.len(),
        });
    }
    if dec.special_index >= dec.parts.len() {
        return Err(DecompositionViolation::SpecialIndex {
            index: dec.special_index,
        });
    }
    let mut owner: Vec<Option<usize>> = vec![None; g.edge_count()];
    for (part, edges) in dec.parts.iter().enumerate() {
        for &edge in edges {
            let slot = owner
                .get_mut(edge)
                .ok_or(DecompositionViolation::UnknownEdge { part, edge })?;
            if let Some(first) = *slot {
                return Err(DecompositionViolation::Duplicate {
                    edge,
                    first,
                    second: part,
                });
            }
            *slot = Some(part);
        }
    }
    if let Some(edge) = owner.iter().position(Option::is_none) {
        return Err(DecompositionViolation::Missing { edge });
    }
    for (part, edges) in dec.parts.iter().enumerate() {
        for (vertex, e, v) in components(g, edges) {
            if e > v {
                return Err(DecompositionViolation::NotPseudoforest {
                    part,
                    vertex,
                    edges: e,
                    vertices: v,
                });
            }
            if part == dec.special_index && e > params.d {
                return Err(DecompositionViolation::LargeComponent {
                    vertex,
                    edges: e,
                    d: params.d,
                });
            }
        }
    }
    Ok(())
}

pub fn verify_certificate(
    g: &Multigraph,
    cert: &DensityCertificate,
    params: &Params,
) -> Result<(), CertificateViolation> {
    if cert.vertices.is_empty() {
        return Err(CertificateViolation::Empty);
    }
    let mut member = vec![false; g.vertex_count()];
    for &v in &cert.vertices {
        if v >= g.vertex_count() {
            return Err(CertificateViolation::UnknownVertex(v));
        }
        if member[v] {
            return Err(CertificateViolation::DuplicateVertex(v));
        }
        member[v] = true;
    }
    let actual = g
        .edges()
        .filter(|&(_, u, v)| member[u] && member[v])
        .count();
    if actual != cert.edge_count {
        return Err(CertificateViolation::EdgeCount {
            claimed: cert.edge_count,
            actual,
        });
    }
    let density = Rational::new(2 * actual as i64, cert.vertices.len() as i64);
    if density != cert.density {
        return Err(CertificateViolation::Density {
            claimed: cert.density,
            actual: density,
        });
    }
    let bound = threshold(params.k, params.d).expect("parameters were validated");
    if cert.claimed_bound != bound {
        return Err(CertificateViolation::Bound {
            claimed: cert.claimed_bound,
            expected: bound,
        });
    }
    if density <= bound {
        return Err(CertificateViolation::NotAboveBound { density, bound });
    }
    Ok(())
}

/// Exhaustive search for a decomposition; the blue parts are interchangeable,
/// so an edge only opens a new blue part after the previous ones are in use.
pub fn bruteforce_decomposition(
    g: &Multigraph,
    params: &Params,
) -> Result<Option<Decomposition>, BruteForceError> {
    let (k, m) = (params.k, g.edge_count());
    let states = (k as u64 + 1).checked_pow(m as u32);
    if states.is_none_or(|s| s > BRUTEFORCE_LIMIT) {
        return Err(BruteForceError::TooLarge {
            k,
            m,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let mut parts: Vec<Forests> = (0..=k).map(|_| Forests::new(g.vertex_count())).collect();
    let mut assignment = vec![0usize; m];
    if search(g, params, 0, 0, &mut parts, &mut assignment) {
        let mut out = vec![Vec::new(); k + 1];
        for (e, &p) in assignment.iter().enumerate() {
            out[p].push(e);
        }
        Ok(Some(Decomposition {
            parts: out,
            special_index: k,
        }))
    } else {
        Ok(None)
    }
}

pub fn bruteforce_decomposition_exists(
    g: &Multigraph,
    params: &Params,
) -> Result<bool, BruteForceError> {
    Ok(bruteforce_decomposition(g, params)?.is_some())
}

fn search(
    g: &Multigraph,
    params: &Params,
    edge: EdgeId,
    blue_used: usize,
    parts: &mut [Forests],
    assignment: &mut [usize],
) -> bool {
    if edge == g.edge_count() {
        return true;
    }
    let (u, v) = g.endpoints(edge);
    let k = params.k;
    // special part first, then blue parts up to the first unused one
    let choices = std::iter::once(k).chain(0..(blue_used + 1).min(k));
    for p in choices {
        let cap = if p == k { params.d } else { usize::MAX };
        if parts[p].try_add(u, v, cap) {
            assignment[edge] = p;
            let used = if p < k {
                blue_used.max(p + 1)
            } else {
                blue_used
            };
            if search(g, params, edge + 1, used, parts, assignment) {
                return true;
            }
            parts[p].undo();
        }
    }
    false
}
