//! Graph substrate: ids, oracles, truncated materialization, balls,
//! boundaries and distance histograms.

pub(crate) mod bfs;
mod finite;
pub mod io;
mod oracle;
mod ops;
mod truncation;
mod vertex;

pub(crate) use bfs::BfsScratch;
pub use finite::{FiniteGraph, VertexSet};
pub use oracle::GraphOracle;
pub(crate) use ops::{boundary_unchecked, distance_histogram_unchecked};
pub use ops::{ball_sizes, boundary, distance_histogram};
pub(crate) use truncation::require_interior;
pub use truncation::{
    interior_check, materialize, materialize_around, MarginMode, MaterializeOptions, Truncation,
    DEFAULT_MAX_VERTICES,
};
pub use vertex::VertexId;

#[cfg(test)]
mod tests;
