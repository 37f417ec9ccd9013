//! Minimum-boundary set search: exact profiles by enumeration at small sizes,
//! greedy growth plus simulated annealing beyond that.
//!
//! Boundaries are always taken in the whole materialized graph, so a region
//! must clear the boundary margin before any search runs on it.

mod counter;
mod enumerate;
mod exact;
mod heuristic;
mod profile;

pub use enumerate::{connected_sets, enum_connected_sets};
pub use exact::{exact_profile, ExactMode, DEFAULT_BUDGET};
pub use heuristic::{heuristic_profile, Schedule, SearchConfig};
pub use profile::{write_profile_csv, write_witness_files, IsoProfile, Method, ProfileEntry};
