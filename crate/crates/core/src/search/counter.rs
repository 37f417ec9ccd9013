use crate::graph::FiniteGraph;

/// Incrementally maintained `|∂A|` under single-vertex insertions and removals.
#[derive(Debug, Clone)]
pub(crate) struct BoundaryCounter {
    /// Number of neighbors in `A`.
    hits: Vec<u32>,
    in_set: Vec<bool>,
    boundary: usize,
    size: usize,
}

impl BoundaryCounter {
    pub(crate) fn new(n: usize) -> Self {
        BoundaryCounter { hits: vec![0; n], in_set: vec![false; n], boundary: 0, size: 0 }
    }

    pub(crate) fn boundary(&self) -> usize {
        self.boundary
    }

    pub(crate) fn contains(&self, v: u32) -> bool {
        self.in_set[v as usize]
    }

    pub(crate) fn is_boundary(&self, v: u32) -> bool {
        !self.in_set[v as usize] && self.hits[v as usize] > 0
    }

    pub(crate) fn insert(&mut self, g: &FiniteGraph, v: u32) {
        debug_assert!(!self.in_set[v as usize]);
        self.in_set[v as usize] = true;
        self.size += 1;
        if self.hits[v as usize] > 0 {
            self.boundary -= 1;
        }
        for &w in g.neighbors(v) {
            self.hits[w as usize] += 1;
            if self.hits[w as usize] == 1 && !self.in_set[w as usize] {
                self.boundary += 1;
            }
        }
    }

    pub(crate) fn remove(&mut self, g: &FiniteGraph, v: u32) {
        debug_assert!(self.in_set[v as usize]);
        self.in_set[v as usize] = false;
        self.size -= 1;
        if self.hits[v as usize] > 0 {
            self.boundary += 1;
        }
        for &w in g.neighbors(v) {
            self.hits[w as usize] -= 1;
            if self.hits[w as usize] == 0 && !self.in_set[w as usize] {
                self.boundary -= 1;
            }
        }
    }

    /// `|∂(A ∪ {v})|` without changing state.
    pub(crate) fn boundary_if_inserted(&self, g: &FiniteGraph, v: u32) -> usize {
        let mut b = self.boundary;
        if self.hits[v as usize] > 0 {
            b -= 1;
        }
        for &w in g.neighbors(v) {
            if self.hits[w as usize] == 0 && !self.in_set[w as usize] && w != v {
                b += 1;
            }
        }
        b
    }

    pub(crate) fn clear(&mut self, g: &FiniteGraph, members: &[u32]) {
        for &v in members {
            self.remove(g, v);
        }
        debug_assert_eq!((self.size, self.boundary), (0, 0));
    }
}
