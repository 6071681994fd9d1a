//! Seeded instance generators.
//!
//! Every generator returns the graph with a [`Metadata`] record holding its
//! exact maximum average degree and a densest vertex set, so test corpora can
//! be classified against a threshold without recomputation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::Decomposition;
use crate::density::{check_mad_at_most, mad_exact, threshold};
use crate::graph::{Multigraph, VertexId};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("need k >= 1 and d >= 1, got k = {k}, d = {d}")]
    BadParameters { k: usize, d: usize },
    #[error("no edge accepted after {0} tries")]
    TriesExhausted(usize),
    #[error("multi-edge probability {0} is outside [0, 1]")]
    BadProbability(Rational),
}

/// What a random graph should look like.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub target: Target,
    pub seed: u64,
    /// Chance that a proposed edge copies the endpoints of an existing one.
    pub multi_edge_prob: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// Maximum average degree at most this value.
    Density(Rational),
    /// Maximum average degree at most `2k + 2d / (d + k + 1)`.
    BelowThreshold { k: usize, d: usize },
}

impl GenSpec {
    pub fn below_threshold(n: usize, k: usize, d: usize, seed: u64) -> Self {
        GenSpec {
            n,
            target: Target::BelowThreshold { k, d },
            seed,
            multi_edge_prob: Rational::new(3, 20),
        }
    }
}

/// Sidecar record written next to a generated edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub generator: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub mad: Rational,
    pub witness_vertices: Vec<VertexId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planted: Option<Decomposition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub graph: Multigraph,
    pub metadata: Metadata,
}

fn finish(
    generator: &str,
    graph: Multigraph,
    seed: u64,
    kd: Option<(usize, usize)>,
    planted: Option<Decomposition>,
) -> Generated {
    let (mad, witness_vertices) = match mad_exact(&graph) {
        Ok(w) => (w.density, w.vertices),
        Err(_) => (Rational::ZERO, Vec::new()),
    };
    let metadata = Metadata {
        generator: generator.to_string(),
        n: graph.vertex_count(),
        m: graph.edge_count(),
        seed,
        k: kd.map(|p| p.0),
        d: kd.map(|p| p.1),
        mad,
        witness_vertices,
        planted,
    };
    Generated { graph, metadata }
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// `k` random pseudoforests plus one whose components have at most `d` edges,
/// with edge ids shuffled. The planted decomposition lists the special part
/// last.
pub fn gen_pseudoforest_union(
    n: usize,
    k: usize,
    d: usize,
    seed: u64,
) -> Result<Generated, GenError> {
    if n == 0 {
        return Err(GenError::TooFewVertices { n, min: 1 });
    }
    let mut rng = rng_for(seed, 1);
    let mut labelled: Vec<(usize, (VertexId, VertexId))> = Vec::new();
    for part in 0..k {
        for v in 0..n {
            if n > 1 && rng.gen_bool(0.8) {
                let mut w = rng.gen_range(0..n - 1);
                if w >= v {
                    w += 1;
                }
                labelled.push((part, (v, w)));
            }
        }
    }
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut rest = &order[..];
    while !rest.is_empty() {
        let size = rng.gen_range(1..=(d + 1)).min(rest.len());
        let (group, tail) = rest.split_at(size);
        rest = tail;
        for i in 1..group.len() {
            let j = rng.gen_range(0..i);
            labelled.push((k, (group[i], group[j])));
        }
        if group.len() >= 2 && group.len() <= d && rng.gen_bool(0.5) {
            let a = rng.gen_range(0..group.len());
            let mut b = rng.gen_range(0..group.len() - 1);
            if b >= a {
                b += 1;
            }
            labelled.push((k, (group[a], group[b])));
        }
    }
    labelled.shuffle(&mut rng);
    let graph =
        Multigraph::new(n, labelled.iter().map(|&(_, e)| e)).expect("no loops by construction");
    let mut parts = vec![Vec::new(); k + 1];
    for (e, &(part, _)) in labelled.iter().enumerate() {
        parts[part].push(e);
    }
    let planted = Decomposition {
        parts,
        special_index: k,
    };
    Ok(finish(
        "pseudoforest_union",
        graph,
        seed,
        Some((k, d)),
        Some(planted),
    ))
}

fn propose(
    rng: &mut ChaCha8Rng,
    n: usize,
    edges: &[(VertexId, VertexId)],
    multi: f64,
) -> (VertexId, VertexId) {
    if !edges.is_empty() && rng.gen_bool(multi) {
        return edges[rng.gen_range(0..edges.len())];
    }
    let u = rng.gen_range(0..n);
    let mut v = rng.gen_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    (u, v)
}

fn probability(p: Rational) -> Result<f64, GenError> {
    if p < Rational::ZERO || p > Rational::from_integer(1) {
        return Err(GenError::BadProbability(p));
    }
    Ok(p.numer() as f64 / p.denom() as f64)
}

/// Grows a random multigraph edge by edge, keeping only edges that leave the
/// maximum average degree at most `bound`. Stops at `⌊n · bound / 2⌋` edges
/// or after `tries` proposals.
fn gated_growth(
    n: usize,
    bound: Rational,
    rng: &mut ChaCha8Rng,
    multi: f64,
    tries: usize,
) -> Result<Multigraph, GenError> {
    let target = (Rational::from_integer(n as i64) * bound).floor() as usize / 2;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut graph = Multigraph::empty(n);
    for _ in 0..tries {
        if edges.len() >= target {
            break;
        }
        let (u, v) = propose(rng, n, &edges, multi);
        let candidate = graph.with_edge(u, v).expect("distinct endpoints");
        if check_mad_at_most(&candidate, bound).is_at_most() {
            edges.push((u, v));
            graph = candidate;
        }
    }
    if edges.is_empty() && target > 0 {
        return Err(GenError::TriesExhausted(tries));
    }
    Ok(graph)
}

/// A random multigraph with maximum average degree at most
/// `2k + 2d / (d + k + 1)`.
pub fn gen_below_threshold(
    n: usize,
    k: usize,
    d: usize,
    seed: u64,
    tries: usize,
) -> Result<Generated, GenError> {
    generate(&GenSpec::below_threshold(n, k, d, seed), tries)
}

/// Generates a graph for `spec`; see [`gen_below_threshold`].
pub fn generate(spec: &GenSpec, tries: usize) -> Result<Generated, GenError> {
    if spec.n < 2 {
        return Err(GenError::TooFewVertices { n: spec.n, min: 2 });
    }
    let multi = probability(spec.multi_edge_prob)?;
    let (bound, kd) = match spec.target {
        Target::Density(b) => (b, None),
        Target::BelowThreshold { k, d } => (
            threshold(k, d).map_err(|_| GenError::BadParameters { k, d })?,
            Some((k, d)),
        ),
    };
    let mut rng = rng_for(spec.seed, 2);
    let graph = gated_growth(spec.n, bound, &mut rng, multi, tries)?;
    Ok(finish("below_threshold", graph, spec.seed, kd, None))
}

/// A multigraph with maximum average degree above `2k + 2d / (d + k + 1)`.
/// The seed picks one of three shapes: a bundle of parallel edges with a
/// sparse fringe, random growth stopped just past the bound, or a dense random
/// core with a fringe.
pub fn gen_above_threshold(n: usize, k: usize, d: usize, seed: u64) -> Result<Generated, GenError> {
    if n < 2 {
        return Err(GenError::TooFewVertices { n, min: 2 });
    }
    let bound = threshold(k, d).map_err(|_| GenError::BadParameters { k, d })?;
    let mut rng = rng_for(seed, 3);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let strategy = if n == 2 { 0 } else { seed % 3 };
    match strategy {
        0 => {
            let copies = bound.ceil() as usize + 1;
            edges.extend(std::iter::repeat_n((0, 1), copies));
            fringe(&mut rng, n, 2, &mut edges);
        }
        1 => loop {
            let e = propose(&mut rng, n, &edges, 0.15);
            edges.push(e);
            let g = Multigraph::new(n, edges.iter().copied()).expect("no loops");
            if !check_mad_at_most(&g, bound).is_at_most() {
                break;
            }
        },
        _ => {
            let core = rng.gen_range(3..=n.min(8));
            let needed = (Rational::from_integer(core as i64) * bound).floor() as usize / 2 + 1;
            for _ in 0..needed {
                let e = propose(&mut rng, core, &edges, 0.15);
                edges.push(e);
            }
            fringe(&mut rng, n, core, &mut edges);
        }
    }
    let mut ids: Vec<usize> = (0..edges.len()).collect();
    ids.shuffle(&mut rng);
    let graph = Multigraph::new(n, ids.iter().map(|&i| edges[i])).expect("no loops");
    Ok(finish("above_threshold", graph, seed, Some((k, d)), None))
}

/// Attaches vertices `from..n` by a random tree edge each, plus a few extra
/// edges among them.
fn fringe(rng: &mut ChaCha8Rng, n: usize, from: usize, edges: &mut Vec<(VertexId, VertexId)>) {
    for v in from..n {
        edges.push((v, rng.gen_range(0..v)));
    }
    if n > from + 1 {
        for _ in 0..(n - from) / 3 {
            let u = rng.gen_range(from..n);
            let mut w = rng.gen_range(0..n - 1);
            if w >= u {
                w += 1;
            }
            edges.push((u, w));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::Params;
    use crate::density::mad_bruteforce;
    use crate::verify::{bruteforce_decomposition_exists, verify_decomposition};

    #[test]
    fn union_with_no_blue_parts() {
        let g = gen_pseudoforest_union(12, 0, 2, 5).unwrap();
        let planted = g.metadata.planted.as_ref().unwrap();
        assert_eq!(planted.parts.len(), 1);
        assert_eq!(planted.parts[0].len(), g.graph.edge_count());
    }

    #[test]
    fn planted_decomposition_verifies() {
        for seed in 0..20 {
            for (k, d) in [(1, 2), (2, 3), (3, 8)] {
                let g = gen_pseudoforest_union(15, k, d, seed).unwrap();
                let p = Params::new(k, d).unwrap();
                assert_eq!(
                    verify_decomposition(&g.graph, g.metadata.planted.as_ref().unwrap(), &p),
                    Ok(())
                );
            }
        }
    }

    #[test]
    fn planted_small_instances_pass_bruteforce() {
        for seed in 0..10 {
            let g = gen_pseudoforest_union(6, 1, 2, seed).unwrap();
            if g.graph.edge_count() <= 16 {
                let p = Params::new(1, 2).unwrap();
                assert_eq!(bruteforce_decomposition_exists(&g.graph, &p), Ok(true));
            }
        }
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(
            gen_pseudoforest_union(10, 2, 3, 9),
            gen_pseudoforest_union(10, 2, 3, 9)
        );
        assert_eq!(
            gen_below_threshold(10, 1, 2, 4, 500),
            gen_below_threshold(10, 1, 2, 4, 500)
        );
        assert_eq!(
            gen_above_threshold(10, 1, 2, 4),
            gen_above_threshold(10, 1, 2, 4)
        );
    }

    #[test]
    fn below_threshold_respects_bound() {
        for seed in 0..10 {
            let g = gen_below_threshold(8, 1, 2, seed, 400).unwrap();
            assert!(g.metadata.mad <= Rational::from_integer(3));
            assert_eq!(mad_bruteforce(&g.graph).unwrap().density, g.metadata.mad);
            assert!(g.graph.edge_count() >= 8);
        }
    }

    #[test]
    fn above_threshold_exceeds_bound() {
        for seed in 0..12 {
            for (k, d) in [(1, 2), (2, 6)] {
                let g = gen_above_threshold(9, k, d, seed).unwrap();
                assert!(g.metadata.mad > threshold(k, d).unwrap());
            }
        }
        let g = gen_above_threshold(2, 1, 2, 0).unwrap();
        assert_eq!(g.graph.edge_count(), 4);
        assert_eq!(g.metadata.mad, Rational::from_integer(4));
    }

    #[test]
    fn rejects_tiny_inputs() {
        assert_eq!(
            gen_below_threshold(1, 1, 2, 0, 10),
            Err(GenError::TooFewVertices { n: 1, min: 2 })
        );
        assert!(gen_pseudoforest_union(0, 1, 2, 0).is_err());
    }
}
