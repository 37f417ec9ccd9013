use std::collections::HashMap;

use super::{GraphOracle, VertexId};
use crate::error::{Error, Result};

/// Materialized undirected graph with dense indices.
///
/// Indices follow [`VertexId`] order, so index order is encoding order and
/// adjacency lists are sorted both ways.
#[derive(Debug, Clone)]
pub struct FiniteGraph {
    ids: Vec<VertexId>,
    index: HashMap<VertexId, u32>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl PartialEq for FiniteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.offsets == other.offsets && self.targets == other.targets
    }
}

impl Eq for FiniteGraph {}

impl FiniteGraph {
    /// Builds a graph from per-vertex neighbor lists given by id.
    ///
    /// Every neighbor must itself appear in `vertices`; the relation must be
    /// symmetric and loop-free. Duplicate neighbor entries are merged.
    pub fn from_adjacency(mut vertices: Vec<(VertexId, Vec<VertexId>)>) -> Result<Self> {
        vertices.sort_by(|a, b| a.0.cmp(&b.0));
        for w in vertices.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Inconsistent(format!("vertex {} listed twice", w[0].0)));
            }
        }
        let index: HashMap<VertexId, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, (v, _))| (v.clone(), i as u32))
            .collect();
        let mut offsets = Vec::with_capacity(vertices.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for (v, nbrs) in &vertices {
            let start = targets.len();
            for w in nbrs {
                let j = *index
                    .get(w)
                    .ok_or_else(|| Error::Inconsistent(format!("neighbor {w} of {v} is not a vertex")))?;
                if w == v {
                    return Err(Error::Inconsistent(format!("self-loop at {v}")));
                }
                targets.push(j);
            }
            targets[start..].sort_unstable();
            let mut end = start;
            for k in start..targets.len() {
                if k == start || targets[k] != targets[end - 1] {
                    targets[end] = targets[k];
                    end += 1;
                }
            }
            targets.truncate(end);
            offsets.push(targets.len());
        }
        let g = FiniteGraph {
            ids: vertices.into_iter().map(|(v, _)| v).collect(),
            index,
            offsets,
            targets,
        };
        g.check_symmetric()?;
        Ok(g)
    }

    /// Builds a graph from an undirected edge list plus optional isolated vertices.
    pub fn from_edges(
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
        isolated: impl IntoIterator<Item = VertexId>,
    ) -> Result<Self> {
        let mut adj: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Inconsistent(format!("self-loop at {u}")));
            }
            adj.entry(u.clone()).or_default().push(v.clone());
            adj.entry(v).or_default().push(u);
        }
        for v in isolated {
            adj.entry(v).or_default();
        }
        Self::from_adjacency(adj.into_iter().collect())
    }

    /// Assembles a graph whose ids are already sorted and whose adjacency
    /// lists are sorted, symmetric index lists.
    pub(crate) fn from_sorted_parts(ids: Vec<VertexId>, adjacency: Vec<Vec<u32>>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        let index = ids.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        let mut offsets = Vec::with_capacity(ids.len() + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(adjacency.iter().map(Vec::len).sum());
        for list in adjacency {
            targets.extend_from_slice(&list);
            offsets.push(targets.len());
        }
        let g = FiniteGraph { ids, index, offsets, targets };
        debug_assert!(g.check_symmetric().is_ok());
        g
    }

    fn check_symmetric(&self) -> Result<()> {
        for v in 0..self.len() as u32 {
            for &w in self.neighbors(v) {
                if self.neighbors(w).binary_search(&v).is_err() {
                    return Err(Error::Inconsistent(format!(
                        "edge {} -> {} has no reverse",
                        self.ids[v as usize], self.ids[w as usize]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn id(&self, v: u32) -> &VertexId {
        &self.ids[v as usize]
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn index_of(&self, v: &VertexId) -> Option<u32> {
        self.index.get(v).copied()
    }

    pub fn require_index(&self, v: &VertexId) -> Result<u32> {
        self.index_of(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    /// Edges `(u, v)` with `u < v`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.len() as u32)
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `Some(m)` iff every vertex has degree `m`.
    pub fn uniform_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (0..self.len() as u32).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Maps ids to a sorted [`VertexSet`], failing on unknown ids.
    pub fn vertex_set<'a>(&self, ids: impl IntoIterator<Item = &'a VertexId>) -> Result<VertexSet> {
        let idx = ids
            .into_iter()
            .map(|v| self.require_index(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(VertexSet::from_indices(idx))
    }

    pub fn set_ids(&self, set: &VertexSet) -> Vec<VertexId> {
        set.iter().map(|v| self.id(v).clone()).collect()
    }
}

/// A finite graph viewed as a (complete) oracle, e.g. one read from a file.
impl GraphOracle for FiniteGraph {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId> {
        match self.index_of(v) {
            Some(i) => FiniteGraph::neighbors(self, i).iter().map(|&w| self.id(w).clone()).collect(),
            None => Vec::new(),
        }
    }

    fn contains(&self, v: &VertexId) -> bool {
        self.index.contains_key(v)
    }

    fn uniform_degree(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            FiniteGraph::uniform_degree(self)
        }
    }

    fn family(&self) -> String {
        "file".to_string()
    }

    fn default_root(&self) -> Option<VertexId> {
        self.ids.first().cloned()
    }
}

/// Strictly increasing list of vertex indices into one [`FiniteGraph`].
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_indices(indices: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    /// Wraps an already strictly increasing vector.
    pub fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn singleton(v: u32) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn is_valid_for(&self, g: &FiniteGraph) -> bool {
        self.0.last().is_none_or(|&v| (v as usize) < g.len())
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::from_indices(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: i64) -> VertexId {
        VertexId::coords(&[i])
    }

    #[test]
    fn indices_follow_id_order() {
        let g = FiniteGraph::from_edges([(v(3), v(1)), (v(1), v(2))], []).unwrap();
        assert_eq!(g.ids(), &[v(1), v(2), v(3)]);
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn rejects_loops_and_asymmetry() {
        assert!(FiniteGraph::from_edges([(v(1), v(1))], []).is_err());
        let asym = vec![(v(1), vec![v(2)]), (v(2), vec![])];
        assert!(matches!(FiniteGraph::from_adjacency(asym), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn duplicate_edges_merge() {
        let g = FiniteGraph::from_edges([(v(1), v(2)), (v(2), v(1))], []).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn vertex_set_sorted_dedup() {
        let s = VertexSet::from_indices([5, 1, 5, 3]);
        assert_eq!(s.as_slice(), &[1, 3, 5]);
        assert!(s.contains(3) && !s.contains(2));
    }
}
