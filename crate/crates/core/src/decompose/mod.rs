//! Decomposition into `k + 1` pseudoforests with a small special part.
//!
//! [`decompose`] orients the graph with out-degree at most `k + 1`, colours
//! one out-arc of every full vertex red and balances out-degrees. The blue
//! arcs then form `k` pseudoforests and the red arcs one more. While some red
//! component has more than `d` edges, the search picks it as the root,
//! explores what it can reach, orders the red components found there and
//! looks for a move that lowers the [`Potential`]. When no move exists, the
//! explored subgraph is dense enough to serve as a [`DensityCertificate`].

mod certificate;
mod config;
mod explore;
mod finders;
mod flip;
mod order;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use certificate::{
    children_bound_applies, children_violations, extract_certificate, pairing_report,
    small_pair_violations, CertificateError, Group, PairingReport,
};
pub use config::{Configuration, Potential, Search};
pub use explore::{explore, ExploredSubgraph};
pub use finders::{
    find_children_reduction_move, find_cycle_break, find_small_pair_move, splits_into_two_large,
    Improvement,
};
pub use flip::{flip, FlipError, Move};
pub use order::{LegalOrder, Link};

use crate::density::{threshold, DensityWitness};
use crate::graph::{EdgeId, Multigraph, OrientedState, VertexId, Violation};
use crate::orient::{colour, hakimi_orient, saturate, OrientError, OrientationResult};
use crate::rational::Rational;
use crate::verify::DensityCertificate;

/// The parameters `k` (number of ordinary parts) and `d` (edge bound for
/// components of the special part).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub k: usize,
    pub d: usize,
    /// `d / (d + k + 1)`.
    pub troublesome_threshold: Rational,
    /// `2k + 2d / (d + k + 1)`.
    pub density_bound: Rational,
}

impl Params {
    pub fn new(k: usize, d: usize) -> Result<Self, DecomposeError> {
        let density_bound = threshold(k, d).map_err(|_| DecomposeError::BadParameters { k, d })?;
        Ok(Params {
            k,
            d,
            troublesome_threshold: Rational::new(d as i64, (d + k + 1) as i64),
            density_bound,
        })
    }

    /// Whether `2 ≤ d ≤ 2k + 2`, the range where a decomposition is
    /// guaranteed below the density bound.
    pub fn guaranteed(&self) -> bool {
        2 <= self.d && self.d <= 2 * self.k + 2
    }

    /// `edges / vertices < d / (d + k + 1)`.
    pub fn is_troublesome(&self, edges: usize, vertices: usize) -> bool {
        (edges * (self.d + self.k + 1)) < self.d * vertices
    }
}

/// Sum over red components of `max(e(K) - d, 0)`.
pub fn residue(state: &OrientedState<'_>, d: usize) -> usize {
    config::residue_of(&state.red_components(), d)
}

/// `k + 1` edge-disjoint pseudoforests covering every edge; the special part's
/// components have at most `d` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<Vec<EdgeId>>,
    pub special_index: usize,
}

impl Decomposition {
    /// Red edges become the special part (last); each vertex puts its `i`-th
    /// blue out-arc, by edge id, into part `i`.
    pub fn from_state(state: &OrientedState<'_>, k: usize) -> Self {
        let g = state.graph();
        let mut parts = vec![Vec::new(); k + 1];
        for v in 0..g.vertex_count() {
            for (i, a) in state.blue_out_arcs(v).enumerate() {
                parts[i].push(a);
            }
        }
        parts[k] = (0..g.edge_count()).filter(|&e| state.is_red(e)).collect();
        for p in &mut parts {
            p.sort_unstable();
        }
        Decomposition {
            parts,
            special_index: k,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Decomposition(Decomposition),
    Certificate(DensityCertificate),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub moves: usize,
    pub flips: usize,
    pub iterations: usize,
    pub saturations: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub outcome: Outcome,
    pub stats: Stats,
    /// Tail of every edge in the final orientation, when one was built.
    pub orientation: Option<Vec<VertexId>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Seeds the choice of red arcs in the initial colouring.
    pub seed: u64,
    /// Maximum number of moves; `10·m²` when `None`.
    pub max_iters: Option<usize>,
    /// Re-check validity and strict potential decrease after every move.
    pub assert_potential: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("need k >= 1 and d >= 1, got k = {k}, d = {d}")]
    BadParameters { k: usize, d: usize },
    #[error("move limit {cap} reached")]
    IterationCap { cap: usize },
    #[error("move did not lower the potential: {before:?} -> {after:?}")]
    PotentialNotDecreased { before: Potential, after: Potential },
    #[error("move produced an invalid state: {0}")]
    InvalidState(Violation),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(
        "no move applies and the explored subgraph has average degree {density}, not above {bound}"
    )]
    Inconclusive { density: Rational, bound: Rational },
}

impl From<OrientError> for DecomposeError {
    fn from(e: OrientError) -> Self {
        DecomposeError::Internal(e.to_string())
    }
}

/// Hooks into the search loop.
pub trait Observer {
    fn on_move(&mut self, _before: &Configuration<'_>, _mv: &Move, _after: &Configuration<'_>) {}
    /// Called when no finder returns a move.
    fn on_terminal(&mut self, _config: &Configuration<'_>, _params: &Params) {}
}

struct Silent;
impl Observer for Silent {}

pub fn decompose(
    g: &Multigraph,
    params: &Params,
    options: &DecomposeOptions,
) -> Result<Report, DecomposeError> {
    decompose_observed(g, params, options, &mut Silent)
}

/// Tries the three finders in priority order.
pub fn find_move<'g>(config: &Configuration<'g>, params: &Params) -> Option<Improvement<'g>> {
    find_cycle_break(config, params)
        .or_else(|| find_small_pair_move(config, params))
        .or_else(|| find_children_reduction_move(config, params))
}

pub fn decompose_observed(
    g: &Multigraph,
    params: &Params,
    options: &DecomposeOptions,
    observer: &mut dyn Observer,
) -> Result<Report, DecomposeError> {
    let k = params.k;
    let m = g.edge_count();
    let cap = options.max_iters.unwrap_or(10 * m * m);
    let mut stats = Stats {
        seed: options.seed,
        ..Stats::default()
    };
    let oriented = match hakimi_orient(g, k + 1) {
        OrientationResult::Oriented(s) => s,
        OrientationResult::Dense(w) => {
            return Ok(Report {
                outcome: Outcome::Certificate(certificate_from_witness(w, params)),
                stats,
                orientation: None,
            })
        }
    };
    let mut state = colour(&oriented, k, options.seed)?;
    stats.saturations += saturate(&mut state, k)?;
    let mut config = Configuration::build(state, None, params);
    loop {
        stats.iterations += 1;
        if config.search.is_none() {
            return Ok(Report {
                outcome: Outcome::Decomposition(Decomposition::from_state(&config.state, k)),
                stats,
                orientation: Some(config.state.tails().to_vec()),
            });
        }
        match find_move(&config, params) {
            Some(Improvement { mv, next }) => {
                if stats.moves >= cap {
                    return Err(DecomposeError::IterationCap { cap });
                }
                if options.assert_potential {
                    check_move(&config, &mv, &next, params)?;
                }
                observer.on_move(&config, &mv, &next);
                stats.moves += 1;
                stats.flips += usize::from(mv.is_flip());
                config = next;
                rebalance(&mut config, params, &mut stats)?;
            }
            None => {
                observer.on_terminal(&config, params);
                match extract_certificate(&config, params) {
                    Ok(cert) => {
                        return Ok(Report {
                            outcome: Outcome::Certificate(cert),
                            stats,
                            orientation: Some(config.state.tails().to_vec()),
                        })
                    }
                    Err(CertificateError::Deficient(v)) => {
                        if !rebalance(&mut config, params, &mut stats)? {
                            return Err(DecomposeError::Internal(format!(
                                "vertex {v} is deficient but no path reversal applies"
                            )));
                        }
                    }
                    Err(CertificateError::Inconsistent { density, bound }) => {
                        return Err(if params.guaranteed() {
                            DecomposeError::Internal(format!(
                                "stuck with explored density {density}, not above {bound}"
                            ))
                        } else {
                            DecomposeError::Inconclusive { density, bound }
                        });
                    }
                    Err(CertificateError::NoRoot) => unreachable!("search is present"),
                }
            }
        }
    }
}

/// Saturates the state and rebuilds the configuration if anything changed.
fn rebalance(
    config: &mut Configuration<'_>,
    params: &Params,
    stats: &mut Stats,
) -> Result<bool, DecomposeError> {
    let mut state = config.state.clone();
    let reversals = saturate(&mut state, params.k)?;
    if reversals == 0 {
        return Ok(false);
    }
    stats.saturations += reversals;
    *config = Configuration::build(state, Some(config), params);
    Ok(true)
}

fn check_move(
    before: &Configuration<'_>,
    mv: &Move,
    after: &Configuration<'_>,
    params: &Params,
) -> Result<(), DecomposeError> {
    after
        .state
        .validate(params.k)
        .map_err(DecomposeError::InvalidState)?;
    let rebuilt = Configuration::build(after.state.clone(), Some(before), params);
    if rebuilt.potential != after.potential || after.potential >= before.potential {
        return Err(DecomposeError::PotentialNotDecreased {
            before: before.potential.clone(),
            after: rebuilt.potential,
        });
    }
    if mv.is_flip() && after.state.red_arc_count() != before.state.red_arc_count() {
        return Err(DecomposeError::Internal(
            "flip changed the red arc count".into(),
        ));
    }
    if splits_into_two_large(before, mv, after, params.d)
        && after.potential.residue > before.potential.residue
    {
        return Err(DecomposeError::Internal(
            "move split a component into two large ones and raised the residue".into(),
        ));
    }
    Ok(())
}

fn certificate_from_witness(w: DensityWitness, params: &Params) -> DensityCertificate {
    DensityCertificate {
        vertices: w.vertices,
        edge_count: w.edge_count,
        density: w.density,
        claimed_bound: params.density_bound,
    }
}

#[cfg(test)]
mod tests;
