//! Decompose multigraphs into `k + 1` pseudoforests, one of which has only
//! components with at most `d` edges, or certify that the graph is too dense.
//!
//! ```
//! use pseudoforest::decompose::{decompose, DecomposeOptions, Outcome, Params};
//! use pseudoforest::graph::Multigraph;
//!
//! let g = Multigraph::new(3, [(0, 1), (1, 2), (2, 0), (0, 1)]).unwrap();
//! let report = decompose(&g, &Params::new(1, 2).unwrap(), &DecomposeOptions::default()).unwrap();
//! assert!(matches!(report.outcome, Outcome::Decomposition(_)));
//! ```

pub mod decompose;
pub mod density;
mod flow;
pub mod format;
pub mod gen;
pub mod graph;
pub mod orient;
pub mod rational;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/multigraphs.md")]
    mod multigraphs {}
    #[doc = include_str!("../../../book/src/density.md")]
    mod density {}
    #[doc = include_str!("../../../book/src/orientations.md")]
    mod orientations {}
    #[doc = include_str!("../../../book/src/colourings.md")]
    mod colourings {}
    #[doc = include_str!("../../../book/src/local-search.md")]
    mod local_search {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
