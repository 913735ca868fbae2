//! Exact domination on Sierpinski products of graphs.
//!
//! The crate builds `G ⊗_f H`, computes minimum dominating sets with a
//! bitset branch-and-bound, and searches the function space `H^G` for the
//! smallest and largest domination number of the product.

pub mod bitset;
pub mod codec;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod product;
pub mod search;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{mod_star, Graph, Subgraph, VertexId};
pub use product::{FunctionAssignment, ProductVertex, SierpinskiProduct};
pub use search::{Mode, SearchConfig, SearchOutcome, Strategy};
pub use solver::{DominationCertificate, DominationInstance};

/// Crate version, recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
