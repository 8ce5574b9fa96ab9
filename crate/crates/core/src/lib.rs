//! Degree difference (DD) and related edge-level network measures.
//!
//! The crate covers simple graphs and random graph models, per-edge measures
//! (DD, directed DD, Forman-Ricci and Ollivier-Ricci curvature, edge
//! betweenness), degree assortativity and its local decomposition, analytic
//! DD distributions for Erdős–Rényi and Barabási–Albert ensembles, edge
//! percolation and minimum-cut robustness, and degree-preserving rewiring.

pub mod analytic;
pub mod assortativity;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod measures;
pub mod pmf;
pub mod rewiring;
pub mod robustness;
pub mod stats;

pub use error::{Error, Result};
pub use generators::{EnsembleSpec, Model};
pub use graph::{DegreeVector, DropReport, Edge, Graph, GraphBuilder};
pub use measures::{CorrelationKind, EdgeMeasureTable, Measure, MeasureOptions};
pub use pmf::{Pmf, PmfSummary};
pub use rewiring::RewireOutcome;
