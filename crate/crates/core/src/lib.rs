//! Ball growth, vertex boundaries and isoperimetric certificates for graphs of
//! pinched exponential growth.
//!
//! Infinite graph families are only ever touched through a [`GraphOracle`]
//! (a pure neighbor function). Analysis runs on a finite ball materialized
//! from the oracle together with a [`Truncation`] record, which knows on which
//! part of the ball distances and boundaries agree with the infinite graph.
//!
//! Module map:
//!
//! - [`graph`]: vertex ids, oracles, materialization, BFS balls, boundaries.
//! - [`generators`]: oracles for trees, lattices, the lamplighter, the comb tree.
//! - [`growth`]: growth profiles, pinch constant fitting and verification, `phi`.
//! - [`isoperimetry`]: boundary ratios, the classical bounds, the Z-certificate.
//! - [`search`]: connected set enumeration and minimum-boundary profiles.
//! - [`cli`]: the `isogrowth` command line driver and report writers.

pub mod cli;
pub mod error;
pub mod generators;
pub mod graph;
pub mod growth;
pub mod isoperimetry;
pub mod numeric;
pub mod plot;
pub mod search;

pub use error::{Error, Result};
pub use generators::{make_oracle, GeneratorSpec};
pub use graph::{
    boundary, distance_histogram, interior_check, materialize, materialize_around, ball_sizes,
    FiniteGraph, GraphOracle, MarginMode, Truncation, VertexId, VertexSet,
};
