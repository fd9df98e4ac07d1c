//! Braid monodromy and fundamental groups of real line and conic-line arrangements.

pub mod cli;
pub mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod monodromy;
pub mod presentation;
pub mod structure;
pub mod word;

pub use error::Error;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    pub mod geometry {}
    #[doc = include_str!("../../../book/src/monodromy.md")]
    pub mod monodromy {}
    #[doc = include_str!("../../../book/src/skeletons.md")]
    pub mod skeletons {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    pub mod presentations {}
    #[doc = include_str!("../../../book/src/graph.md")]
    pub mod graph {}
    #[doc = include_str!("../../../book/src/structure.md")]
    pub mod structure {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
