//! Certificates from stuck configurations, and the structural properties a
//! stuck configuration is expected to have.

use thiserror::Error;

use super::config::Configuration;
use super::Params;
use crate::graph::EdgeId;
use crate::rational::Rational;
use crate::verify::DensityCertificate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("no red component has more than d edges")]
    NoRoot,
    #[error("vertex {0} of the explored subgraph has fewer than k blue out-arcs")]
    Deficient(usize),
    #[error("explored subgraph has average degree {density}, not above {bound}")]
    Inconsistent { density: Rational, bound: Rational },
}

/// Returns the explored subgraph as a certificate once every vertex in it has
/// `k` blue out-arcs and its average degree exceeds the bound.
pub fn extract_certificate(
    config: &Configuration<'_>,
    params: &Params,
) -> Result<DensityCertificate, CertificateError> {
    let search = config.search.as_ref().ok_or(CertificateError::NoRoot)?;
    let state = &config.state;
    let h = &search.explored;
    if let Some(&v) = h
        .vertices
        .iter()
        .find(|&&v| state.blue_out_degree(v) < params.k)
    {
        return Err(CertificateError::Deficient(v));
    }
    let edge_count = state.graph().induced_edge_count(&h.vertices);
    let density = Rational::average_degree(edge_count, h.vertex_count());
    if density <= params.density_bound {
        return Err(CertificateError::Inconsistent {
            density,
            bound: params.density_bound,
        });
    }
    Ok(DensityCertificate {
        vertices: h.vertices.clone(),
        edge_count,
        density,
        claimed_bound: params.density_bound,
    })
}

/// Blue arcs `(x, y)` where `y`'s acyclic component is a child of `x`'s and
/// the two have fewer than `d` edges together.
pub fn small_pair_violations(config: &Configuration<'_>, params: &Params) -> Vec<EdgeId> {
    let Some(search) = &config.search else {
        return Vec::new();
    };
    let state = &config.state;
    let comps = &config.comps;
    let mut out = Vec::new();
    for &c in search.order.components() {
        for &x in &comps.get(c).vertices {
            for arc in state.blue_out_arcs(x) {
                let cy = comps.index_of(state.head(arc));
                if search.order.parent(cy) == Some(c)
                    && !comps.get(cy).has_cycle()
                    && comps.get(c).edge_count() + comps.get(cy).edge_count() < params.d
                {
                    out.push(arc);
                }
            }
        }
    }
    out
}

/// Whether a component with `edges` red edges is large enough for the bound
/// on troublesome children: at least 2 edges when `d / (d + k + 1) < 1/2`,
/// at least 3 otherwise.
pub fn children_bound_applies(edges: usize, params: &Params) -> bool {
    let half = params.troublesome_threshold < Rational::new(1, 2);
    edges >= if half { 2 } else { 3 }
}

/// Components (by index) that meet [`children_bound_applies`] and still have
/// more than `k` troublesome children.
pub fn children_violations(config: &Configuration<'_>, params: &Params) -> Vec<usize> {
    let Some(search) = &config.search else {
        return Vec::new();
    };
    search
        .order
        .components()
        .iter()
        .copied()
        .filter(|&c| children_bound_applies(config.comps.get(c).edge_count(), params))
        .filter(|&c| troublesome_children(config, params, c).len() > params.k)
        .collect()
}

pub(crate) fn troublesome_children(
    config: &Configuration<'_>,
    params: &Params,
    c: usize,
) -> Vec<usize> {
    let Some(search) = &config.search else {
        return Vec::new();
    };
    search
        .order
        .children(c)
        .into_iter()
        .filter(|&t| {
            let t = config.comps.get(t);
            params.is_troublesome(t.edge_count(), t.vertex_count())
        })
        .collect()
}

/// A non-troublesome component together with its troublesome children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub head: usize,
    pub members: Vec<usize>,
    pub edges: usize,
    pub vertices: usize,
}

/// The pairing of the explored subgraph into groups, and the ways it falls
/// short of the counting argument.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairingReport {
    pub groups: Vec<Group>,
    /// Troublesome components whose parent is troublesome too.
    pub orphans: Vec<usize>,
    /// Groups whose red density is below `d / (d + k + 1)`, or not above it
    /// for the root's group.
    pub sparse: Vec<usize>,
}

impl PairingReport {
    pub fn is_clean(&self) -> bool {
        self.orphans.is_empty() && self.sparse.is_empty()
    }
}

pub fn pairing_report(config: &Configuration<'_>, params: &Params) -> PairingReport {
    let Some(search) = &config.search else {
        return PairingReport::default();
    };
    let comps = &config.comps;
    let trouble = |c: usize| {
        let c = comps.get(c);
        params.is_troublesome(c.edge_count(), c.vertex_count())
    };
    let mut report = PairingReport::default();
    for &c in search.order.components() {
        if trouble(c) {
            if search.order.parent(c).is_none_or(trouble) {
                report.orphans.push(c);
            }
            continue;
        }
        let members = troublesome_children(config, params, c);
        let edges = comps.get(c).edge_count()
            + members
                .iter()
                .map(|&t| comps.get(t).edge_count())
                .sum::<usize>();
        let vertices = comps.get(c).vertex_count()
            + members
                .iter()
                .map(|&t| comps.get(t).vertex_count())
                .sum::<usize>();
        let ratio = Rational::new(edges as i64, vertices as i64);
        let ok = if c == search.root() {
            ratio > params.troublesome_threshold
        } else {
            ratio >= params.troublesome_threshold
        };
        if !ok {
            report.sparse.push(c);
        }
        report.groups.push(Group {
            head: c,
            members,
            edges,
            vertices,
        });
    }
    report
}
