//! Topological robustness: reverse edge percolation driven by edge measures,
//! global minimum edge cuts, and where minimum-cut edges rank under each
//! measure.

mod mec;
mod mincut;
mod percolation;

pub use mec::{mec_percentiles, CutPercentilePool};
pub use mincut::min_edge_cut;
pub use percolation::{
    percolate, removal_order, PercolationOptions, PercolationOrder, PercolationTrace,
    TraceSummary,
};
