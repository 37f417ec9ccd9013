use super::tree::{heap_depth, heap_neighbors};
use crate::graph::{GraphOracle, VertexId};

/// The comb tree: a one-sided path `1, 2, 3, ...` where spine vertex `n` is
/// joined to the root of a full binary tree of depth `n`.
///
/// Ids: `[n, 0]` is spine vertex `n`; `[n, h]` with `h >= 1` is heap node `h`
/// of the tree hanging at `n`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CombTree;

/// All vertices of the binary tree attached at spine vertex `k`:
/// `2^(k+1) - 1` vertices whose only boundary vertex is the spine vertex.
pub fn comb_attached_tree(k: u32) -> Vec<VertexId> {
    assert!((1..=40).contains(&k), "attached tree index out of range");
    (1i64..(1i64 << (k + 1))).map(|h| VertexId::coords(&[k as i64, h])).collect()
}

impl GraphOracle for CombTree {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId> {
        if !self.contains(v) {
            return Vec::new();
        }
        let c = v.as_coords().unwrap();
        let (n, h) = (c[0], c[1]);
        let mut out = Vec::with_capacity(3);
        if h == 0 {
            if n >= 2 {
                out.push(VertexId::coords(&[n - 1, 0]));
            }
            out.push(VertexId::coords(&[n, 1]));
            out.push(VertexId::coords(&[n + 1, 0]));
        } else {
            let (parent, children) = heap_neighbors(h, n as u32);
            out.push(VertexId::coords(&[n, parent.unwrap_or(0)]));
            for ch in children.into_iter().flatten() {
                out.push(VertexId::coords(&[n, ch]));
            }
        }
        out.sort();
        out
    }

    fn contains(&self, v: &VertexId) -> bool {
        match v.as_coords() {
            Some(&[n, h]) => n >= 1 && (h == 0 || (h >= 1 && heap_depth(h) as i64 <= n)),
            _ => false,
        }
    }

    fn uniform_degree(&self) -> Option<usize> {
        None
    }

    fn family(&self) -> String {
        "comb".to_string()
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(VertexId::coords(&[1, 0]))
    }
}
