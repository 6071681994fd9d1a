//! Colour-exchanging moves on a red/blue state.
//!
//! A flip on a red edge `e` at `x` and a blue arc `(x, y)` makes `(x, y)` red
//! and directed `y → x`, makes `e` blue and directed away from `x`, and
//! reverses the directed red path that starts at `y`. Reversing that path
//! frees the red out-slot at `y` for the new arc; its last vertex (the sink
//! of `y`'s red tree) takes over one red out-arc.
//!
//! A rewire does the same at `y`, but the blue arc count at `x` is restored by
//! reversing a blue path `x_n → … → x` instead, and the red edge that turns
//! blue sits at `x_n`.

use thiserror::Error;

use crate::graph::{Colour, EdgeId, OrientedState, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlipError {
    #[error("edge {0} is not blue")]
    NotBlue(EdgeId),
    #[error("edge {0} is not red")]
    NotRed(EdgeId),
    #[error("red edge {edge} is not incident to vertex {vertex}")]
    NotIncident { edge: EdgeId, vertex: VertexId },
    #[error("arc {arc} joins two vertices of the same red component")]
    SameComponent { arc: EdgeId },
    #[error("the red component of vertex {0} contains a cycle")]
    CyclicHead(VertexId),
    #[error(
        "red path from the head ends at vertex {vertex} with out-degree {out_degree}, expected {k}"
    )]
    DeficientSink {
        vertex: VertexId,
        out_degree: usize,
        k: usize,
    },
    #[error("arcs do not form a directed blue path ending at vertex {0}")]
    BadPath(VertexId),
}

/// A move the local search can apply.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// Flip on `red_edge` and the blue arc `arc`.
    Flip { arc: EdgeId, red_edge: EdgeId },
    /// Make `arc` red, reverse the blue `path` (listed from its first vertex
    /// to the tail of `arc`) and turn `red_edge`, incident to the first vertex
    /// of `path`, blue.
    Rewire {
        arc: EdgeId,
        path: Vec<EdgeId>,
        red_edge: EdgeId,
    },
}

impl Move {
    pub fn is_flip(&self) -> bool {
        matches!(self, Move::Flip { .. })
    }

    /// Applies the move in place. On error the state is unchanged.
    pub fn apply(&self, state: &mut OrientedState<'_>, k: usize) -> Result<(), FlipError> {
        match self {
            Move::Flip { arc, red_edge } => flip_in_place(state, *red_edge, *arc, k),
            Move::Rewire {
                arc,
                path,
                red_edge,
            } => rewire_in_place(state, *arc, path, *red_edge, k),
        }
    }
}

/// Returns a copy of `state` flipped on `red_edge` and `arc`.
pub fn flip<'g>(
    state: &OrientedState<'g>,
    red_edge: EdgeId,
    arc: EdgeId,
    k: usize,
) -> Result<OrientedState<'g>, FlipError> {
    let mut next = state.clone();
    flip_in_place(&mut next, red_edge, arc, k)?;
    Ok(next)
}

fn flip_in_place(
    state: &mut OrientedState<'_>,
    red_edge: EdgeId,
    arc: EdgeId,
    k: usize,
) -> Result<(), FlipError> {
    let x = state.tail(arc);
    let q = head_path(state, arc, k)?;
    check_red_at(state, red_edge, x)?;
    for &a in &q {
        state.reverse(a);
    }
    state.reverse(arc);
    state.set_colour(arc, Colour::Red);
    state.set_colour(red_edge, Colour::Blue);
    state.set_tail(red_edge, x);
    Ok(())
}

fn rewire_in_place(
    state: &mut OrientedState<'_>,
    arc: EdgeId,
    path: &[EdgeId],
    red_edge: EdgeId,
    k: usize,
) -> Result<(), FlipError> {
    let x = state.tail(arc);
    let Some(&first) = path.first() else {
        return Err(FlipError::BadPath(x));
    };
    let start = state.tail(first);
    let mut at = start;
    for &a in path {
        if !state.is_blue(a) || state.tail(a) != at {
            return Err(FlipError::BadPath(x));
        }
        at = state.head(a);
    }
    if at != x {
        return Err(FlipError::BadPath(x));
    }
    check_red_at(state, red_edge, start)?;
    let q = head_path(state, arc, k)?;
    for &a in &q {
        state.reverse(a);
    }
    state.reverse(arc);
    state.set_colour(arc, Colour::Red);
    for &a in path {
        state.reverse(a);
    }
    state.set_colour(red_edge, Colour::Blue);
    state.set_tail(red_edge, start);
    Ok(())
}

fn check_red_at(
    state: &OrientedState<'_>,
    edge: EdgeId,
    vertex: VertexId,
) -> Result<(), FlipError> {
    if !state.is_red(edge) {
        return Err(FlipError::NotRed(edge));
    }
    let (u, v) = state.graph().endpoints(edge);
    if u != vertex && v != vertex {
        return Err(FlipError::NotIncident { edge, vertex });
    }
    Ok(())
}

/// Checks the blue arc and returns the directed red path starting at its head.
fn head_path(state: &OrientedState<'_>, arc: EdgeId, k: usize) -> Result<Vec<EdgeId>, FlipError> {
    if !state.is_blue(arc) {
        return Err(FlipError::NotBlue(arc));
    }
    let x = state.tail(arc);
    let y = state.head(arc);
    let head_comp = red_tree(state, y).ok_or(FlipError::CyclicHead(y))?;
    if head_comp.contains(&x) {
        return Err(FlipError::SameComponent { arc });
    }
    let mut q = Vec::new();
    let mut at = y;
    while let Some(a) = state.red_out_arc(at) {
        q.push(a);
        at = state.head(a);
    }
    let out_degree = state.out_degree(at);
    if out_degree != k {
        return Err(FlipError::DeficientSink {
            vertex: at,
            out_degree,
            k,
        });
    }
    Ok(q)
}

/// Vertices of the red component of `v`, or `None` if it holds a cycle.
fn red_tree(state: &OrientedState<'_>, v: VertexId) -> Option<Vec<VertexId>> {
    let g = state.graph();
    let mut seen = vec![v];
    let mut stack = vec![v];
    let mut edges = 0usize;
    while let Some(a) = stack.pop() {
        for e in state.red_incident(a) {
            edges += 1;
            let b = g.opposite(e, a);
            if !seen.contains(&b) {
                seen.push(b);
                stack.push(b);
            }
        }
    }
    // every edge was counted from both ends
    (edges / 2 < seen.len()).then_some(seen)
}
