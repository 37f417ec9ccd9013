use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{io, FiniteGraph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactAll,
    ExactConnected,
    Heuristic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ExactAll => "exact_all",
            Method::ExactConnected => "exact_connected",
            Method::Heuristic => "heuristic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileEntry {
    pub n: usize,
    pub min_boundary: usize,
    pub method: Method,
    pub witness: VertexSet,
}

/// Smallest boundary found for each set size, with a witness per size.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct IsoProfile {
    /// Sorted by `n`; sizes with no admissible set are absent.
    pub rows: Vec<ProfileEntry>,
}

impl IsoProfile {
    pub fn get(&self, n: usize) -> Option<&ProfileEntry> {
        self.rows.binary_search_by_key(&n, |r| r.n).ok().map(|i| &self.rows[i])
    }

    pub(crate) fn from_candidates(best: Vec<Option<Candidate>>, method: Method) -> Self {
        IsoProfile {
            rows: best
                .into_iter()
                .enumerate()
                .filter_map(|(n, c)| {
                    c.map(|c| ProfileEntry { n, min_boundary: c.boundary, method, witness: c.set })
                })
                .collect(),
        }
    }
}

/// A set with its boundary size; ordered by boundary, then sorted members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Candidate {
    pub boundary: usize,
    pub set: VertexSet,
}

impl Candidate {
    pub(crate) fn key(&self) -> (usize, &[u32]) {
        (self.boundary, self.set.as_slice())
    }

    /// Replaces `slot` if `(boundary, members)` is smaller.
    pub(crate) fn offer(slot: &mut Option<Candidate>, boundary: usize, members: &[u32]) {
        let set = VertexSet::from_indices(members.iter().copied());
        if slot.as_ref().is_none_or(|c| (boundary, set.as_slice()) < c.key()) {
            *slot = Some(Candidate { boundary, set });
        }
    }
}

fn witness_string(g: &FiniteGraph, set: &VertexSet) -> String {
    set.iter().map(|v| g.id(v).to_string()).collect::<Vec<_>>().join(" ")
}

/// Columns `n,min_boundary,method,witness`; the witness is a space-separated
/// list of vertex ids.
pub fn write_profile_csv<W: Write>(g: &FiniteGraph, profile: &IsoProfile, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["n", "min_boundary", "method", "witness"])?;
    for r in &profile.rows {
        out.write_record([
            r.n.to_string(),
            r.min_boundary.to_string(),
            r.method.to_string(),
            witness_string(g, &r.witness),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Writes one vertex-set file `witness_n{n}.txt` per row into `dir`.
pub fn write_witness_files(g: &FiniteGraph, profile: &IsoProfile, dir: impl AsRef<Path>) -> Result<()> {
    std::fs::create_dir_all(dir.as_ref())?;
    for r in &profile.rows {
        io::write_vertex_set(g, &r.witness, dir.as_ref().join(format!("witness_n{}.txt", r.n)))?;
    }
    Ok(())
}
