//! Construction and verification toolkit for Ramsey-type problems on Berge
//! cycles in uniform hypergraphs: randomized lower-bound constructions,
//! degree/codegree peeling machinery, exact cycle detection and counting,
//! independence-number solvers and machine-checkable certificates.

pub mod berge;
pub mod census;
pub mod certify;
pub mod error;
pub mod fixtures;
pub mod girth;
pub mod graph;
pub mod hypergraph;
pub mod indep;
pub mod peel;
pub mod randbuild;
pub mod sweep;
pub mod textio;

pub use error::{Error, Result};
pub use graph::{Bipartition, Graph, VertexId};
pub use hypergraph::Hypergraph;
