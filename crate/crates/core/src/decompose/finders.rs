//! Improvement moves.
//!
//! Each finder lists candidate moves for one kind of defect, simulates them on
//! a copy of the state and returns the first one whose resulting potential is
//! strictly smaller. Candidates the structural argument prescribes come first,
//! then every other flip of the same kind as a fallback.

use std::collections::{HashSet, VecDeque};

use super::config::{Configuration, Search};
use super::flip::Move;
use super::Params;
use crate::graph::{EdgeId, OrientedState, VertexId};

/// A move together with the configuration it produces.
#[derive(Debug, Clone)]
pub struct Improvement<'g> {
    pub mv: Move,
    pub next: Configuration<'g>,
}

struct Trial<'a, 'g> {
    config: &'a Configuration<'g>,
    params: &'a Params,
    tried: HashSet<Move>,
}

impl<'a, 'g> Trial<'a, 'g> {
    fn new(config: &'a Configuration<'g>, params: &'a Params) -> Self {
        Trial {
            config,
            params,
            tried: HashSet::new(),
        }
    }

    fn attempt(&mut self, mv: Move) -> Option<Improvement<'g>> {
        self.attempt_with(mv, |_| true)
    }

    fn attempt_with(
        &mut self,
        mv: Move,
        accept: impl FnOnce(&Configuration<'g>) -> bool,
    ) -> Option<Improvement<'g>> {
        if !self.tried.insert(mv.clone()) {
            return None;
        }
        let mut state = self.config.state.clone();
        mv.apply(&mut state, self.params.k).ok()?;
        let next = Configuration::build(state, Some(self.config), self.params);
        (next.potential < self.config.potential && accept(&next))
            .then_some(Improvement { mv, next })
    }
}

/// Marks the vertices that lie on a red cycle.
pub(crate) fn red_cycle_vertices(state: &OrientedState<'_>) -> Vec<bool> {
    let g = state.graph();
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| state.red_degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| degree[v] <= 1).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for e in state.red_incident(v) {
            let w = g.opposite(e, v);
            if alive[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    alive
}

/// The red edge at `from` on a red path towards `to`.
pub(crate) fn edge_toward(
    state: &OrientedState<'_>,
    from: VertexId,
    to: VertexId,
) -> Option<EdgeId> {
    let g = state.graph();
    let mut pred: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[to] = true;
    let mut queue = VecDeque::from([to]);
    while let Some(v) = queue.pop_front() {
        if v == from {
            return pred[v];
        }
        for e in state.red_incident(v) {
            let w = g.opposite(e, v);
            if !seen[w] {
                seen[w] = true;
                pred[w] = Some(e);
                queue.push_back(w);
            }
        }
    }
    None
}

/// A flip on a blue arc leaving a red cycle into an acyclic component, using a
/// cycle edge. It removes one red cycle.
pub fn find_cycle_break<'g>(
    config: &Configuration<'g>,
    params: &Params,
) -> Option<Improvement<'g>> {
    let search = config.search.as_ref()?;
    if config.potential.cycles == 0 {
        return None;
    }
    let state = &config.state;
    let comps = &config.comps;
    let on_cycle = red_cycle_vertices(state);
    let mut trial = Trial::new(config, params);
    for &c in search.order.components() {
        if !comps.get(c).has_cycle() {
            continue;
        }
        for &x in comps.get(c).vertices.iter().filter(|&&x| on_cycle[x]) {
            for arc in state.blue_out_arcs(x) {
                let cy = comps.index_of(state.head(arc));
                if cy == c || comps.get(cy).has_cycle() {
                    continue;
                }
                let cycle_edges = state
                    .red_incident(x)
                    .filter(|&e| on_cycle[state.graph().opposite(e, x)]);
                for e in cycle_edges {
                    if let Some(found) = trial.attempt(Move::Flip { arc, red_edge: e }) {
                        return Some(found);
                    }
                }
            }
        }
    }
    None
}

/// A move for a blue arc `(x, y)` where `y`'s acyclic component is a child of
/// `x`'s and the two together have fewer than `d` edges.
pub fn find_small_pair_move<'g>(
    config: &Configuration<'g>,
    params: &Params,
) -> Option<Improvement<'g>> {
    let search = config.search.as_ref()?;
    let state = &config.state;
    let comps = &config.comps;
    let mut trial = Trial::new(config, params);
    for &c in search.order.components() {
        if c == search.root() {
            continue;
        }
        let ex = comps.get(c).edge_count();
        for &x in &comps.get(c).vertices {
            for arc in state.blue_out_arcs(x) {
                let cy = comps.index_of(state.head(arc));
                if search.order.parent(cy) != Some(c)
                    || comps.get(cy).has_cycle()
                    || ex + comps.get(cy).edge_count() >= params.d
                {
                    continue;
                }
                for mv in small_pair_candidates(config, search, c, x, arc) {
                    if let Some(found) = trial.attempt(mv) {
                        return Some(found);
                    }
                }
            }
        }
    }
    None
}

fn small_pair_candidates(
    config: &Configuration<'_>,
    search: &Search,
    c: usize,
    x: VertexId,
    arc: EdgeId,
) -> Vec<Move> {
    let state = &config.state;
    let comps = &config.comps;
    let order = &search.order;
    let mut out = Vec::new();
    // another vertex determines the position of x's component
    for w in order.determiners(state, comps, c) {
        if w != x {
            if let Some(e) = edge_toward(state, x, w) {
                out.push(Move::Flip { arc, red_edge: e });
            }
        }
    }
    // x itself determines it: rewire along the chain of ancestors up to the
    // first one with a red edge
    if let Some(link) = order.link(c).filter(|l| l.determiner == x) {
        let mut path = vec![link.arc];
        let mut cur = link.parent;
        while comps.get(cur).edge_count() == 0 {
            match order.link(cur) {
                Some(l) => {
                    path.push(l.arc);
                    cur = l.parent;
                }
                None => break,
            }
        }
        path.reverse();
        let start = state.tail(path[0]);
        for e in state.red_incident(start) {
            out.push(Move::Rewire {
                arc,
                path: path.clone(),
                red_edge: e,
            });
        }
    }
    out.extend(
        state
            .red_incident(x)
            .map(|e| Move::Flip { arc, red_edge: e }),
    );
    out
}

/// True if the move left the endpoints of its recoloured red edge in two
/// different red components that both have more than `d` edges.
pub fn splits_into_two_large(
    before: &Configuration<'_>,
    mv: &Move,
    after: &Configuration<'_>,
    d: usize,
) -> bool {
    let (pivot, red_edge) = match mv {
        Move::Flip { arc, red_edge } => (before.state.tail(*arc), *red_edge),
        Move::Rewire { path, red_edge, .. } => (before.state.tail(path[0]), *red_edge),
    };
    let other = before.state.graph().opposite(red_edge, pivot);
    let a = after.comps.index_of(pivot);
    let b = after.comps.index_of(other);
    a != b && after.comps.get(a).edge_count() > d && after.comps.get(b).edge_count() > d
}

/// A move for a red component with at least two edges and more than `k`
/// troublesome children.
pub fn find_children_reduction_move<'g>(
    config: &Configuration<'g>,
    params: &Params,
) -> Option<Improvement<'g>> {
    let search = config.search.as_ref()?;
    let state = &config.state;
    let comps = &config.comps;
    let order = &search.order;
    let mut trial = Trial::new(config, params);
    for &c in order.components() {
        let comp = comps.get(c);
        if comp.edge_count() < 2 {
            continue;
        }
        let troublesome: Vec<usize> = order
            .children(c)
            .into_iter()
            .filter(|&t| {
                let t = comps.get(t);
                params.is_troublesome(t.edge_count(), t.vertex_count())
            })
            .collect();
        if troublesome.len() <= params.k {
            continue;
        }
        let pivot_arcs: Vec<(VertexId, EdgeId)> = comp
            .vertices
            .iter()
            .flat_map(|&v| state.blue_out_arcs(v).map(move |a| (v, a)))
            .filter(|&(_, a)| troublesome.contains(&comps.index_of(state.head(a))))
            .collect();
        let mut candidates = Vec::new();
        if c != search.root() {
            for z in order.determiners(state, comps, c) {
                for &(x, arc) in &pivot_arcs {
                    if x != z {
                        if let Some(e) = edge_toward(state, x, z) {
                            candidates.push(Move::Flip { arc, red_edge: e });
                        }
                    } else if state.red_degree(z) == 1 {
                        let e = state.red_incident(z).next().expect("red degree 1");
                        candidates.push(Move::Flip { arc, red_edge: e });
                    }
                }
            }
        } else {
            for &(w, arc) in &pivot_arcs {
                if state.red_degree(w) == 1 {
                    let e = state.red_incident(w).next().expect("red degree 1");
                    candidates.push(Move::Flip { arc, red_edge: e });
                }
            }
            for &(x, arc) in &pivot_arcs {
                for &(w, _) in &pivot_arcs {
                    if w != x {
                        if let Some(e) = edge_toward(state, x, w) {
                            candidates.push(Move::Flip { arc, red_edge: e });
                        }
                    }
                }
            }
        }
        for &(x, arc) in &pivot_arcs {
            candidates.extend(
                state
                    .red_incident(x)
                    .map(|e| Move::Flip { arc, red_edge: e }),
            );
        }
        for mv in candidates {
            let guard = mv.clone();
            let found = trial.attempt_with(mv, |next| {
                !splits_into_two_large(config, &guard, next, params.d)
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}
