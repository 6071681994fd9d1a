//! Text formats: edge lists, JSON result documents and DOT drawings.
//!
//! Edge lists start with a header `p <n> <m>` followed by `m` lines
//! `e <u> <v>` with 0-based vertex ids. Lines starting with `#` and blank
//! lines are skipped.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{Decomposition, Outcome, Params, Report};
use crate::graph::{EdgeId, GraphError, Multigraph, VertexId};
use crate::rational::Rational;
use crate::verify::DensityCertificate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `p <n> <m>`")]
    BadHeader,
    #[error("expected edge line `e <u> <v>`")]
    BadEdge,
    #[error("header promised {expected} edges, found {got}")]
    EdgeCount { expected: usize, got: usize },
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge is a loop at vertex {0}")]
    Loop(usize),
    #[error("missing header")]
    MissingHeader,
}

fn numbers<const N: usize>(rest: &str) -> Option<[usize; N]> {
    let mut out = [0; N];
    let mut it = rest.split_whitespace();
    for slot in &mut out {
        *slot = it.next()?.parse().ok()?;
    }
    it.next().is_none().then_some(out)
}

pub fn parse_edge_list(text: &str) -> Result<Multigraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |kind| ParseError { line, kind };
        match header {
            None => {
                let [n, m] = t
                    .strip_prefix("p ")
                    .and_then(numbers::<2>)
                    .ok_or(err(ParseErrorKind::BadHeader))?;
                header = Some((n, m));
            }
            Some((n, m)) => {
                let [u, v] = t
                    .strip_prefix("e ")
                    .and_then(numbers::<2>)
                    .ok_or(err(ParseErrorKind::BadEdge))?;
                if edges.len() == m {
                    return Err(err(ParseErrorKind::EdgeCount {
                        expected: m,
                        got: m + 1,
                    }));
                }
                for w in [u, v] {
                    if w >= n {
                        return Err(err(ParseErrorKind::VertexOutOfRange { vertex: w, n }));
                    }
                }
                if u == v {
                    return Err(err(ParseErrorKind::Loop(u)));
                }
                edges.push((u, v));
                edge_lines.push(line);
            }
        }
    }
    let (n, m) = header.ok_or(ParseError {
        line: last_line.max(1),
        kind: ParseErrorKind::MissingHeader,
    })?;
    if edges.len() != m {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::EdgeCount {
                expected: m,
                got: edges.len(),
            },
        });
    }
    Multigraph::new(n, edges).map_err(|e| match e {
        GraphError::Loop { edge, vertex } => ParseError {
            line: edge_lines[edge],
            kind: ParseErrorKind::Loop(vertex),
        },
        GraphError::VertexOutOfRange { edge, vertex, n } => ParseError {
            line: edge_lines[edge],
            kind: ParseErrorKind::VertexOutOfRange { vertex, n },
        },
    })
}

pub fn print_edge_list(g: &Multigraph) -> String {
    let mut out = format!("p {} {}\n", g.vertex_count(), g.edge_count());
    for (_, u, v) in g.edges() {
        writeln!(out, "e {u} {v}").expect("writing to a string");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResultKind {
    Decomposition,
    Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocStats {
    pub moves: usize,
    pub flips: usize,
    pub iterations: usize,
    pub seed: u64,
}

/// JSON form of a decomposition run. Decomposition fields and certificate
/// fields are mutually exclusive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub k: usize,
    pub d: usize,
    pub threshold: Rational,
    pub result: ResultKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<EdgeId>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_vertices: Option<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_density: Option<Rational>,
    pub stats: DocStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{0} result is missing field `{1}`")]
    Missing(&'static str, &'static str),
    #[error("{0} result has unexpected field `{1}`")]
    Unexpected(&'static str, &'static str),
}

impl ResultDocument {
    pub fn from_report(params: &Params, report: &Report) -> Self {
        let stats = DocStats {
            moves: report.stats.moves,
            flips: report.stats.flips,
            iterations: report.stats.iterations,
            seed: report.stats.seed,
        };
        let base = ResultDocument {
            k: params.k,
            d: params.d,
            threshold: params.density_bound,
            result: ResultKind::Decomposition,
            parts: None,
            special_index: None,
            orientation: None,
            witness_vertices: None,
            witness_density: None,
            stats,
        };
        match &report.outcome {
            Outcome::Decomposition(dec) => ResultDocument {
                parts: Some(dec.parts.clone()),
                special_index: Some(dec.special_index),
                orientation: report.orientation.clone(),
                ..base
            },
            Outcome::Certificate(cert) => ResultDocument {
                result: ResultKind::Certificate,
                witness_vertices: Some(cert.vertices.clone()),
                witness_density: Some(cert.density),
                ..base
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Parses and checks that exactly the fields of the declared result kind
    /// are present.
    pub fn from_json(text: &str) -> Result<Self, SchemaError> {
        let doc: ResultDocument =
            serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))?;
        match doc.result {
            ResultKind::Decomposition => {
                let name = "decomposition";
                if doc.parts.is_none() {
                    return Err(SchemaError::Missing(name, "parts"));
                }
                if doc.special_index.is_none() {
                    return Err(SchemaError::Missing(name, "special_index"));
                }
                if doc.witness_vertices.is_some() {
                    return Err(SchemaError::Unexpected(name, "witness_vertices"));
                }
                if doc.witness_density.is_some() {
                    return Err(SchemaError::Unexpected(name, "witness_density"));
                }
            }
            ResultKind::Certificate => {
                let name = "certificate";
                if doc.witness_vertices.is_none() {
                    return Err(SchemaError::Missing(name, "witness_vertices"));
                }
                if doc.witness_density.is_none() {
                    return Err(SchemaError::Missing(name, "witness_density"));
                }
                for (present, field) in [
                    (doc.parts.is_some(), "parts"),
                    (doc.special_index.is_some(), "special_index"),
                    (doc.orientation.is_some(), "orientation"),
                ] {
                    if present {
                        return Err(SchemaError::Unexpected(name, field));
                    }
                }
            }
        }
        Ok(doc)
    }

    pub fn decomposition(&self) -> Option<Decomposition> {
        Some(Decomposition {
            parts: self.parts.clone()?,
            special_index: self.special_index?,
        })
    }

    /// The certificate, with its edge count recounted from `g`.
    pub fn certificate(&self, g: &Multigraph) -> Option<DensityCertificate> {
        let vertices = self.witness_vertices.clone()?;
        let in_range = vertices.iter().all(|&v| v < g.vertex_count());
        Some(DensityCertificate {
            edge_count: if in_range {
                g.induced_edge_count(&vertices)
            } else {
                0
            },
            vertices,
            density: self.witness_density?,
            claimed_bound: self.threshold,
        })
    }
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#17becf", "#bcbd22", "#7f7f7f", "#e377c2",
];

/// DOT drawing of a decomposition: special-part edges red and dashed, every
/// other part solid in its own colour. Arcs follow `orientation` (tail per
/// edge) when given, otherwise they are drawn without arrowheads.
pub fn to_dot(g: &Multigraph, dec: &Decomposition, orientation: Option<&[VertexId]>) -> String {
    let mut part_of = vec![usize::MAX; g.edge_count()];
    for (p, edges) in dec.parts.iter().enumerate() {
        for &e in edges {
            if e < part_of.len() {
                part_of[e] = p;
            }
        }
    }
    let mut out = String::from("digraph G {\n");
    if g.vertex_count() > 0 {
        out.push_str("  node [shape=circle];\n");
    }
    for v in 0..g.vertex_count() {
        writeln!(out, "  {v};").expect("writing to a string");
    }
    for (e, u, v) in g.edges() {
        let (a, b) = match orientation {
            Some(tails) if tails.get(e) == Some(&v) => (v, u),
            _ => (u, v),
        };
        let p = part_of[e];
        let mut attrs = if p == dec.special_index {
            String::from("color=red, style=dashed")
        } else {
            format!("color=\"{}\"", PALETTE[p % PALETTE.len()])
        };
        write!(attrs, ", label=\"{e}\"").expect("writing to a string");
        if orientation.is_none() {
            attrs.push_str(", dir=none");
        }
        writeln!(out, "  {a} -> {b} [{attrs}];").expect("writing to a string");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_parallel_edges() {
        let g = parse_edge_list("# two vertices\np 2 3\ne 0 1\n\ne 1 0\ne 0 1\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.endpoints(1), (1, 0));
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            parse_edge_list("q 2 1\ne 0 1\n"),
            Err(ParseError {
                line: 1,
                kind: ParseErrorKind::BadHeader
            })
        );
        assert_eq!(
            parse_edge_list("p 2 2\ne 0 1\ne 0 2\n").unwrap_err(),
            ParseError {
                line: 3,
                kind: ParseErrorKind::VertexOutOfRange { vertex: 2, n: 2 }
            }
        );
        assert_eq!(parse_edge_list("p 2 1\n# c\ne 1 1\n").unwrap_err().line, 3);
        assert!(matches!(
            parse_edge_list("p 3 2\ne 0 1\n").unwrap_err().kind,
            ParseErrorKind::EdgeCount {
                expected: 2,
                got: 1
            }
        ));
        assert!(matches!(
            parse_edge_list("p 3 1\ne 0 1\ne 1 2\n").unwrap_err(),
            ParseError {
                line: 3,
                kind: ParseErrorKind::EdgeCount { .. }
            }
        ));
        assert_eq!(
            parse_edge_list("").unwrap_err().kind,
            ParseErrorKind::MissingHeader
        );
    }

    #[test]
    fn print_parse_round_trip() {
        let g = Multigraph::new(4, [(0, 1), (1, 0), (2, 3)]).unwrap();
        assert_eq!(parse_edge_list(&print_edge_list(&g)).unwrap(), g);
        let empty = Multigraph::empty(0);
        assert_eq!(print_edge_list(&empty), "p 0 0\n");
        assert_eq!(parse_edge_list("p 0 0\n").unwrap(), empty);
    }

    #[test]
    fn schema_rejects_mixed_fields() {
        let text = r#"{"k":1,"d":2,"threshold":"3/1","result":"certificate",
            "witness_vertices":[0,1],"witness_density":"5/1","parts":[[0]],
            "stats":{"moves":0,"flips":0,"iterations":0,"seed":0}}"#;
        assert_eq!(
            ResultDocument::from_json(text),
            Err(SchemaError::Unexpected("certificate", "parts"))
        );
        let text = r#"{"k":1,"d":2,"threshold":"3/1","result":"decomposition",
            "stats":{"moves":0,"flips":0,"iterations":0,"seed":0}}"#;
        assert_eq!(
            ResultDocument::from_json(text),
            Err(SchemaError::Missing("decomposition", "parts"))
        );
        assert!(matches!(
            ResultDocument::from_json("{\"k\": 1.5}"),
            Err(SchemaError::Json(_))
        ));
    }

    #[test]
    fn dot_styles() {
        let g = Multigraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let dec = Decomposition {
            parts: vec![vec![0], vec![1]],
            special_index: 1,
        };
        let dot = to_dot(&g, &dec, Some(&[1, 1]));
        assert!(dot.contains("1 -> 0 [color=\"#1f77b4\", label=\"0\"];"));
        assert!(dot.contains("1 -> 2 [color=red, style=dashed, label=\"1\"];"));
        let plain = to_dot(&g, &dec, None);
        assert!(plain.contains("0 -> 1 [color=\"#1f77b4\", label=\"0\", dir=none];"));
        let empty = to_dot(
            &Multigraph::empty(0),
            &Decomposition {
                parts: vec![vec![], vec![]],
                special_index: 1,
            },
            None,
        );
        assert_eq!(empty, "digraph G {\n}\n");
    }
}
