//! Bounded out-degree orientations.
//!
//! [`hakimi_orient`] inserts edges one at a time and repairs an overloaded
//! tail by reversing a directed path to a vertex with spare capacity. When no
//! such vertex is reachable, the reachable set is itself too dense and becomes
//! the returned witness.
//!
//! [`colour`] turns an orientation with `Δ⁺ ≤ k + 1` into a red/blue state,
//! and [`saturate`] then reverses directed paths from vertices of out-degree
//! `k + 1` to vertices of out-degree below `k`. Each reversal removes exactly
//! one red arc.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::density::DensityWitness;
use crate::graph::{Colour, EdgeId, Multigraph, OrientedState, VertexId, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientError {
    #[error("vertex {vertex} has out-degree {out_degree}, more than {limit}")]
    OutDegreeTooLarge {
        vertex: VertexId,
        out_degree: usize,
        limit: usize,
    },
    #[error("invalid red/blue state: {0}")]
    InvalidState(#[from] Violation),
}

/// Result of [`hakimi_orient`].
#[derive(Debug, Clone)]
pub enum OrientationResult<'g> {
    /// An all-blue orientation with maximum out-degree at most the cap.
    Oriented(OrientedState<'g>),
    /// A vertex set inducing more than `cap · |S|` edges, so its average
    /// degree exceeds `2 · cap`.
    Dense(DensityWitness),
}

impl<'g> OrientationResult<'g> {
    pub fn oriented(self) -> Option<OrientedState<'g>> {
        match self {
            OrientationResult::Oriented(s) => Some(s),
            OrientationResult::Dense(_) => None,
        }
    }
}

/// Orients `g` with every out-degree at most `cap`, or proves that
/// `mad(g) > 2 · cap`.
pub fn hakimi_orient(g: &Multigraph, cap: usize) -> OrientationResult<'_> {
    let n = g.vertex_count();
    let mut tail = vec![usize::MAX; g.edge_count()];
    let mut out = vec![0usize; n];
    let mut pred: Vec<Option<EdgeId>> = vec![None; n];
    let mut seen = vec![false; n];

    for (e, u, _) in g.edges() {
        tail[e] = u;
        out[u] += 1;
        if out[u] <= cap {
            continue;
        }
        // BFS along inserted out-arcs for a vertex below the cap.
        seen.fill(false);
        pred.fill(None);
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        let mut found = None;
        'search: while let Some(x) = queue.pop_front() {
            for &a in g.incident(x) {
                if a > e || tail[a] != x {
                    continue;
                }
                let y = g.opposite(a, x);
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                pred[y] = Some(a);
                if out[y] < cap {
                    found = Some(y);
                    break 'search;
                }
                queue.push_back(y);
            }
        }
        match found {
            Some(mut y) => {
                out[y] += 1;
                out[u] -= 1;
                while let Some(a) = pred[y] {
                    std::mem::swap(&mut tail[a], &mut y);
                }
            }
            None => {
                let reach: Vec<VertexId> = (0..n).filter(|&v| seen[v]).collect();
                return OrientationResult::Dense(DensityWitness::from_vertices(g, reach));
            }
        }
    }
    let colour = vec![Colour::Blue; g.edge_count()];
    let state = OrientedState::from_parts(g, tail, colour).expect("tails are endpoints");
    OrientationResult::Oriented(state)
}

/// Recolours an orientation for parameter `k`: a vertex with `k + 1`
/// out-arcs gets one red out-arc chosen by the seeded generator, everything
/// else is blue. The orientation itself is kept.
pub fn colour<'g>(
    state: &OrientedState<'g>,
    k: usize,
    seed: u64,
) -> Result<OrientedState<'g>, OrientError> {
    let g = state.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colours = vec![Colour::Blue; g.edge_count()];
    for v in 0..g.vertex_count() {
        let outs: Vec<EdgeId> = state.out_arcs(v).collect();
        if outs.len() > k + 1 {
            return Err(OrientError::OutDegreeTooLarge {
                vertex: v,
                out_degree: outs.len(),
                limit: k + 1,
            });
        }
        if outs.len() == k + 1 {
            colours[outs[rng.gen_range(0..outs.len())]] = Colour::Red;
        }
    }
    Ok(OrientedState::from_parts(
        g,
        state.tails().to_vec(),
        colours,
    )?)
}

/// Reverses directed paths from out-degree `k + 1` vertices to vertices of
/// out-degree below `k` until none is left, repairing colours after each
/// reversal. Returns the number of reversals, which equals the drop in red
/// arcs.
///
/// Afterwards every vertex reachable along arcs from a vertex of out-degree
/// `k + 1` has out-degree at least `k`. That set contains every red edge and
/// everything reachable from one by blue arcs.
pub fn saturate(state: &mut OrientedState<'_>, k: usize) -> Result<usize, OrientError> {
    state.validate(k)?;
    let n = state.graph().vertex_count();
    let mut reversals = 0;
    let mut pred: Vec<Option<EdgeId>> = vec![None; n];
    let mut seen = vec![false; n];
    loop {
        let out: Vec<usize> = (0..n).map(|v| state.out_degree(v)).collect();
        seen.fill(false);
        pred.fill(None);
        let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| out[v] == k + 1).collect();
        for &s in &queue {
            seen[s] = true;
        }
        let mut target = None;
        'search: while let Some(x) = queue.pop_front() {
            for a in state.out_arcs(x) {
                let y = state.head(a);
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                pred[y] = Some(a);
                if out[y] < k {
                    target = Some(y);
                    break 'search;
                }
                queue.push_back(y);
            }
        }
        let Some(target) = target else {
            return Ok(reversals);
        };
        let mut path = Vec::new();
        let mut y = target;
        while let Some(a) = pred[y] {
            path.push(a);
            y = state.tail(a);
        }
        path.reverse();
        reverse_path(state, &path);
        reversals += 1;
        debug_assert_eq!(state.validate(k), Ok(()));
    }
}

/// Reverses the directed path `arcs` (listed from source to target) and
/// shifts colours so every inner vertex keeps its red/blue split. The target
/// gains a blue arc and the source ends with no red out-arc.
fn reverse_path(state: &mut OrientedState<'_>, arcs: &[EdgeId]) {
    let source = state.tail(arcs[0]);
    let colours: Vec<Colour> = arcs.iter().map(|&a| state.colour(a)).collect();
    let source_red = if colours[0] == Colour::Blue {
        state.red_out_arc(source)
    } else {
        None
    };
    for (i, &a) in arcs.iter().enumerate() {
        state.reverse(a);
        let c = colours.get(i + 1).copied().unwrap_or(Colour::Blue);
        state.set_colour(a, c);
    }
    if let Some(r) = source_red {
        state.set_colour(r, Colour::Blue);
    }
}
