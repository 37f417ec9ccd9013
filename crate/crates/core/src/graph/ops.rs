use std::collections::BTreeMap;

use super::bfs::BfsScratch;
use super::truncation::{require_interior, MarginMode};
use super::{FiniteGraph, Truncation, VertexSet};
use crate::error::{Error, Result};

/// `|B(v, r)|` for `r = 0..=r_max`.
///
/// Fails with a margin error unless `dist(o, v) + r_max <= R_t`, since a ball
/// reaching past the truncation would be silently undercounted.
pub fn ball_sizes(g: &FiniteGraph, t: &Truncation, v: u32, r_max: u32) -> Result<Vec<usize>> {
    check_vertex(g, v)?;
    t.require_ball_exact(g, v, r_max)?;
    Ok(BfsScratch::new(g.len()).ball_sizes(g, v, r_max))
}

/// Vertex boundary: vertices outside `set` with a neighbor in `set`.
pub fn boundary(g: &FiniteGraph, t: &Truncation, set: &VertexSet) -> Result<VertexSet> {
    require_interior(g, t, set, MarginMode::Boundary)?;
    Ok(boundary_unchecked(g, set))
}

pub(crate) fn boundary_unchecked(g: &FiniteGraph, set: &VertexSet) -> VertexSet {
    let mut out: Vec<u32> = set
        .iter()
        .flat_map(|v| g.neighbors(v).iter().copied())
        .filter(|&w| !set.contains(w))
        .collect();
    out.sort_unstable();
    out.dedup();
    VertexSet::from_sorted(out)
}

/// Distance histogram `r -> m_r = |{v ∈ A : d(v, u) = r}|`.
///
/// Requires the `3·s` rule with `s` the largest root distance over `A ∪ {u}`.
pub fn distance_histogram(
    g: &FiniteGraph,
    t: &Truncation,
    set: &VertexSet,
    u: u32,
) -> Result<BTreeMap<u32, usize>> {
    check_vertex(g, u)?;
    let mut with_u = set.as_slice().to_vec();
    with_u.push(u);
    let with_u = VertexSet::from_indices(with_u);
    require_interior(g, t, &with_u, MarginMode::Certificate)?;
    distance_histogram_unchecked(g, &mut BfsScratch::new(g.len()), set, u)
}

pub(crate) fn distance_histogram_unchecked(
    g: &FiniteGraph,
    bfs: &mut BfsScratch,
    set: &VertexSet,
    u: u32,
) -> Result<BTreeMap<u32, usize>> {
    let mut hist = BTreeMap::new();
    if set.is_empty() {
        return Ok(hist);
    }
    let mut found = 0;
    bfs.run(g, &[u], u32::MAX, |v, d| {
        if set.contains(v) {
            *hist.entry(d).or_insert(0) += 1;
            found += 1;
        }
        found < set.len()
    });
    if found < set.len() {
        return Err(Error::Disconnected);
    }
    Ok(hist)
}

fn check_vertex(g: &FiniteGraph, v: u32) -> Result<()> {
    if (v as usize) < g.len() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("vertex index {v} out of range")))
    }
}
