//! Exact minimum cuts of a hidden simple graph, computed through cut-value
//! queries only.
//!
//! The hidden graph is reachable solely through a [`CutOracle`], which answers
//! `c(S)` (the number of edges leaving `S`) and keeps a [`QueryLedger`] of how
//! many queries each algorithm spent. On top of that sit:
//!
//! * [`discovery`]: neighbor search, graph learning and uniform edge sampling,
//! * [`contraction`]: random contraction driven through the oracle,
//! * [`sparsify`]: edge-strength classification and the weighted sparsifier,
//! * [`global`]: two exact global min cut algorithms,
//! * [`st`]: exact s-t min cut through a sparsifier and a max flow,
//! * [`reference`]: exact solvers used for verification.

pub mod contraction;
pub mod discovery;
pub mod enumerate;
pub mod error;
pub mod flow;
pub mod generate;
pub mod global;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod params;
pub mod reference;
pub mod rng;
pub mod sparsify;
pub mod st;

mod intgraph;

pub use error::{Error, Result};
pub use graph::{ContractionState, Cut, CutGraph, GroupId, Rational, SimpleGraph, VertexId, VertexSet, WeightedGraph};
pub use oracle::{ContractedView, CutAccess, CutOracle, LedgerSnapshot, QueryLedger};
pub use params::{Constants, EnumerationConfig};
