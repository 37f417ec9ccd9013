use std::collections::HashMap;

use rayon::prelude::*;

use super::bfs::BfsScratch;
use super::{FiniteGraph, GraphOracle, VertexId, VertexSet};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_VERTICES: usize = 2_000_000;

/// Which margin rule [`interior_check`] enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginMode {
    /// Every vertex of the set is at distance `<= R_t - 1`, so all of its
    /// neighbors are materialized and the boundary is exact.
    Boundary,
    /// The `3·s` rule: with `s` the largest root distance in the set,
    /// `R_t >= 3s` (and `R_t >= s + 1`). All geodesics between the set and its
    /// boundary then stay inside the truncation.
    Certificate,
}

/// Records which ball of the oracle graph was materialized.
///
/// Invariants: every materialized vertex has root distance `<= radius`, and a
/// vertex at distance `< radius` has all of its oracle neighbors materialized.
/// A truncation is *complete* when no vertex has an unmaterialized neighbor,
/// i.e. the whole (finite) graph is present; all margin rules then hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    roots: Vec<u32>,
    radius: u32,
    dist: Vec<u32>,
    open: Vec<bool>,
    complete: bool,
}

impl Truncation {
    /// Truncation record for a graph that is known to be the whole graph
    /// (e.g. read from a file without a truncation header).
    pub fn complete(g: &FiniteGraph, root: u32) -> Self {
        let dist = root_distances(g, &[root]);
        let radius = dist.iter().copied().filter(|&d| d != u32::MAX).max().unwrap_or(0);
        Truncation {
            roots: vec![root],
            radius,
            dist,
            open: vec![false; g.len()],
            complete: true,
        }
    }

    /// Rebuilds a truncation from its roots and radius only. Vertices at the
    /// radius are conservatively treated as having unmaterialized neighbors.
    pub fn from_roots(g: &FiniteGraph, roots: &[u32], radius: u32) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::InvalidParameter("truncation needs at least one root".into()));
        }
        let dist = root_distances(g, roots);
        if let Some(v) = dist.iter().position(|&d| d > radius) {
            return Err(Error::Inconsistent(format!(
                "vertex {} lies outside the declared truncation radius {radius}",
                g.id(v as u32)
            )));
        }
        let open: Vec<bool> = dist.iter().map(|&d| d == radius).collect();
        let complete = !open.iter().any(|&o| o);
        Ok(Truncation { roots: roots.to_vec(), radius, dist, open, complete })
    }

    /// The first root `o`.
    pub fn root(&self) -> u32 {
        self.roots[0]
    }

    pub fn roots(&self) -> &[u32] {
        &self.roots
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_single_root(&self) -> bool {
        self.roots.len() == 1
    }

    /// Distance from the root set; `u32::MAX` if unreachable.
    pub fn dist(&self, v: u32) -> u32 {
        self.dist[v as usize]
    }

    pub fn distances(&self) -> &[u32] {
        &self.dist
    }

    /// True when `v` has oracle neighbors that were not materialized.
    pub fn is_open(&self, v: u32) -> bool {
        self.open[v as usize]
    }

    /// Whether `B(v, r)` computed inside the truncation equals the true ball.
    pub fn ball_exact(&self, v: u32, r: u32) -> bool {
        self.complete || (self.dist(v) as u64 + r as u64) <= self.radius as u64
    }

    /// Whether every neighbor of `v` is materialized.
    pub fn interior(&self, v: u32) -> bool {
        self.complete || self.dist(v) < self.radius
    }

    pub(crate) fn require_ball_exact(&self, g: &FiniteGraph, v: u32, r: u32) -> Result<()> {
        if self.ball_exact(v, r) {
            Ok(())
        } else {
            Err(Error::Margin(format!(
                "ball of radius {r} around {} needs dist(o,v) + r <= {} but dist(o,v) = {}",
                g.id(v),
                self.radius,
                self.dist(v)
            )))
        }
    }

    /// Vertices within `r` of the root set, in index order.
    pub fn ball(&self, r: u32) -> VertexSet {
        VertexSet::from_sorted(
            (0..self.dist.len() as u32).filter(|&v| self.dist(v) <= r).collect(),
        )
    }

    /// Vertices whose neighborhoods are fully materialized.
    pub fn safe_interior(&self) -> VertexSet {
        VertexSet::from_sorted((0..self.dist.len() as u32).filter(|&v| self.interior(v)).collect())
    }
}

fn root_distances(g: &FiniteGraph, roots: &[u32]) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.len()];
    let mut bfs = BfsScratch::new(g.len());
    bfs.run(g, roots, u32::MAX, |v, d| {
        dist[v as usize] = d;
        true
    });
    dist
}

/// Interior check for a set under the given margin rule.
pub fn interior_check(t: &Truncation, set: &VertexSet, mode: MarginMode) -> bool {
    if t.is_complete() || set.is_empty() {
        return true;
    }
    match mode {
        MarginMode::Boundary => set.iter().all(|v| t.interior(v)),
        MarginMode::Certificate => {
            if !t.is_single_root() {
                return false;
            }
            let s = set.iter().map(|v| t.dist(v)).max().unwrap_or(0) as u64;
            let r = t.radius() as u64;
            3 * s <= r && s < r
        }
    }
}

pub(crate) fn require_interior(
    g: &FiniteGraph,
    t: &Truncation,
    set: &VertexSet,
    mode: MarginMode,
) -> Result<()> {
    if !set.is_valid_for(g) {
        return Err(Error::InvalidParameter("vertex set index out of range".into()));
    }
    if interior_check(t, set, mode) {
        return Ok(());
    }
    let far = set.iter().max_by_key(|&v| t.dist(v)).unwrap();
    Err(Error::Margin(match mode {
        MarginMode::Boundary => format!(
            "set touches the truncation frontier: {} is at distance {} with R_t = {}",
            g.id(far),
            t.dist(far),
            t.radius()
        ),
        MarginMode::Certificate => format!(
            "3·s rule fails: s = {} (at {}) but R_t = {}{}",
            t.dist(far),
            g.id(far),
            t.radius(),
            if t.is_single_root() { "" } else { " (multi-root truncation)" }
        ),
    }))
}

#[derive(Debug, Clone, Copy)]
pub struct MaterializeOptions {
    pub max_vertices: usize,
}

impl Default for MaterializeOptions {
    fn default() -> Self {
        MaterializeOptions { max_vertices: DEFAULT_MAX_VERTICES }
    }
}

/// Materializes `B(o, R_t)` from an oracle.
pub fn materialize(
    oracle: &dyn GraphOracle,
    root: &VertexId,
    radius: u32,
) -> Result<(FiniteGraph, Truncation)> {
    materialize_around(oracle, std::slice::from_ref(root), radius, MaterializeOptions::default())
}

/// Materializes the union of balls `B(o_i, R_t)` around several roots.
///
/// Multi-root truncations keep the boundary and ball margin rules, but never
/// satisfy the certificate (`3·s`) rule.
pub fn materialize_around(
    oracle: &dyn GraphOracle,
    roots: &[VertexId],
    radius: u32,
    opts: MaterializeOptions,
) -> Result<(FiniteGraph, Truncation)> {
    if roots.is_empty() {
        return Err(Error::InvalidParameter("no truncation root given".into()));
    }
    let mut index: HashMap<VertexId, u32> = HashMap::new();
    let mut ids: Vec<VertexId> = Vec::new();
    let mut dist: Vec<u32> = Vec::new();
    let mut level: Vec<u32> = Vec::new();
    for r in roots {
        if !oracle.contains(r) {
            return Err(Error::UnknownVertex(r.to_string()));
        }
        if !index.contains_key(r) {
            index.insert(r.clone(), ids.len() as u32);
            level.push(ids.len() as u32);
            ids.push(r.clone());
            dist.push(0);
        }
    }
    if ids.len() > opts.max_vertices {
        return Err(Error::ResourceLimit { limit: opts.max_vertices });
    }
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); ids.len()];
    let mut open: Vec<bool> = vec![false; ids.len()];

    let mut d = 0u32;
    while !level.is_empty() {
        let lists: Vec<Vec<VertexId>> = level.par_iter().map(|&i| oracle.neighbors(&ids[i as usize])).collect();
        let mut next = Vec::new();
        for (&i, list) in level.iter().zip(lists) {
            let mut nbrs = Vec::with_capacity(list.len());
            for w in list {
                match index.get(&w) {
                    Some(&j) => nbrs.push(j),
                    None if d < radius => {
                        let j = ids.len() as u32;
                        index.insert(w.clone(), j);
                        ids.push(w);
                        dist.push(d + 1);
                        adjacency.push(Vec::new());
                        open.push(false);
                        next.push(j);
                        nbrs.push(j);
                        if ids.len() > opts.max_vertices {
                            return Err(Error::ResourceLimit { limit: opts.max_vertices });
                        }
                    }
                    None => open[i as usize] = true,
                }
            }
            adjacency[i as usize] = nbrs;
        }
        level = next;
        d += 1;
    }

    // Reindex in VertexId order.
    drop(index);
    let mut order: Vec<u32> = (0..ids.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| ids[a as usize].cmp(&ids[b as usize]));
    let mut new_of_old = vec![0u32; ids.len()];
    for (new, &old) in order.iter().enumerate() {
        new_of_old[old as usize] = new as u32;
    }
    let mut slots: Vec<Option<VertexId>> = ids.into_iter().map(Some).collect();
    let sorted_ids: Vec<VertexId> = order.iter().map(|&old| slots[old as usize].take().unwrap()).collect();
    let sorted_adj: Vec<Vec<u32>> = order
        .iter()
        .map(|&old| {
            let mut l: Vec<u32> = adjacency[old as usize].iter().map(|&w| new_of_old[w as usize]).collect();
            l.sort_unstable();
            l
        })
        .collect();
    let sorted_dist: Vec<u32> = order.iter().map(|&old| dist[old as usize]).collect();
    let sorted_open: Vec<bool> = order.iter().map(|&old| open[old as usize]).collect();
    let graph = FiniteGraph::from_sorted_parts(sorted_ids, sorted_adj);
    let root_idx = roots_in_order(&graph, roots);
    let complete = !sorted_open.iter().any(|&o| o);
    Ok((
        graph,
        Truncation { roots: root_idx, radius, dist: sorted_dist, open: sorted_open, complete },
    ))
}

fn roots_in_order(g: &FiniteGraph, roots: &[VertexId]) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::new();
    for r in roots {
        let i = g.index_of(r).expect("root materialized");
        if !out.contains(&i) {
            out.push(i);
        }
    }
    out
}
