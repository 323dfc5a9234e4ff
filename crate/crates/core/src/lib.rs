//! PageRank, comparison centralities and executable invariance axioms on
//! node-weighted directed multigraphs.
//!
//! ```
//! use prax::{centrality::pagerank_direct, graph::parse_graph};
//!
//! let g = parse_graph("node u 1\nnode v 0\nedge u v\n")?;
//! let pr = pagerank_direct(&g, 0.85)?;
//! assert!((pr.get(&"v".into())? - 0.85).abs() < 1e-12);
//! # Ok::<(), prax::Error>(())
//! ```

pub mod axioms;
pub mod centrality;
pub mod chain;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod random_walk;
pub mod scalar;
pub mod transforms;

pub use centrality::{CentralityVector, Measure, MeasureId, MeasureSpec};
pub use error::{Error, Result};
pub use graph::{GraphClass, MultiGraph, NodeId};
pub use scalar::{Rational, Scalar, Tolerance};
pub use transforms::OpInstance;

/// Graph with double-precision weights.
pub type Graph = MultiGraph<f64>;
/// Graph with exact rational weights.
pub type ExactGraph = MultiGraph<Rational>;
/// Scores with double precision.
pub type Scores = CentralityVector<f64>;
/// Exact rational scores.
pub type ExactScores = CentralityVector<Rational>;
