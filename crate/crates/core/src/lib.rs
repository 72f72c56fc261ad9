//! Certification engine for path-induced tree embeddings.
//!
//! Given a graph, a rooted tree and a clique bound `t`, the engine either
//! finds a copy of the tree in which every root path is induced, or colors
//! the graph within an explicit bound depending only on the tree and `t`.
//! Both outcomes come as certificates that [`certificate::verify`] checks
//! without running any search.

pub mod certificate;
pub mod creature;
pub mod dichotomy;
pub mod embed;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod refine;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{Coloring, Graph, PartialColoring, VertexSet};
pub use tree::{PairType, RootedTree};
