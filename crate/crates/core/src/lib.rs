//! Exact symbolic computation for graph and ultragraph Leavitt path
//! algebras: normal forms, the graph-from-ultragraph and finite-graph
//! approximant constructions, desingularization, generator families, and
//! decidable simplicity analysis, anchored by independent matrix oracles.

pub mod analysis;
pub mod construct;
pub mod corpus;
pub mod element;
pub mod error;
pub mod graph;
pub mod hom;
pub mod oracle;
pub mod ring;
pub mod sets;
pub mod suites;

pub use error::{Error, Result};
pub use graph::{Graph, Path, Ultragraph, UniverseMode, Violation};
pub use ring::{Coeff, Ring};
pub use sets::{EdgeId, SizeClass, Universe, VertexId, VertexSet};
