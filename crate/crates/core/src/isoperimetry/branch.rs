use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BfsScratch, FiniteGraph, Truncation, VertexId};

/// Outcome of the branch-point check on a tree truncation.
///
/// A branch point is a vertex whose removal leaves at least three components
/// reaching the truncation frontier (open vertices), the finite stand-in for
/// infinite components. The property for `k` holds iff removing branch points
/// from the safe interior leaves only paths of fewer than `k` vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchReport {
    pub k: usize,
    pub holds: bool,
    pub interior: usize,
    pub branch_points: usize,
    /// Number of vertices on the longest branch-point-free interior path.
    pub longest_free_path: usize,
    /// That path, from its lower-index end; present only when the check fails.
    pub witness: Option<Vec<VertexId>>,
}

impl BranchReport {
    /// Branch points per safe-interior vertex.
    pub fn density(&self) -> f64 {
        if self.interior == 0 {
            0.0
        } else {
            self.branch_points as f64 / self.interior as f64
        }
    }
}

pub fn branch_point_check(g: &FiniteGraph, t: &Truncation, k: usize) -> Result<BranchReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("path length k must be >= 1".into()));
    }
    let n = g.len();
    if n == 0 {
        return Err(Error::NotATree("empty graph".into()));
    }
    if g.edge_count() != n - 1 {
        return Err(Error::NotATree(format!("{n} vertices but {} edges", g.edge_count())));
    }
    let root = t.root();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![u32::MAX; n];
    let mut bfs = BfsScratch::new(n);
    bfs.run(g, &[root], u32::MAX, |v, _| {
        order.push(v);
        true
    });
    if order.len() != n {
        return Err(Error::NotATree("graph is disconnected".into()));
    }
    for &v in &order {
        for &w in g.neighbors(v) {
            if w != parent[v as usize] && w != root {
                parent[w as usize] = v;
            }
        }
    }

    // Frontier vertices in each rooted subtree.
    let mut below = vec![0usize; n];
    for &v in order.iter().rev() {
        if t.is_open(v) {
            below[v as usize] += 1;
        }
        let p = parent[v as usize];
        if p != u32::MAX {
            below[p as usize] += below[v as usize];
        }
    }
    let total = below[root as usize];
    let is_branch: Vec<bool> = (0..n as u32)
        .map(|v| {
            let children = g
                .neighbors(v)
                .iter()
                .filter(|&&w| w != parent[v as usize] && below[w as usize] > 0)
                .count();
            let above = usize::from(parent[v as usize] != u32::MAX && total > below[v as usize]);
            children + above >= 3
        })
        .collect();

    let interior: Vec<bool> = (0..n as u32).map(|v| t.interior(v)).collect();
    let residual = |v: u32| interior[v as usize] && !is_branch[v as usize];
    let mut seen = vec![false; n];
    let mut best: Vec<u32> = Vec::new();
    for s in 0..n as u32 {
        if seen[s as usize] || !residual(s) {
            continue;
        }
        let comp = component(g, s, &residual);
        for &v in &comp {
            seen[v as usize] = true;
        }
        let path = longest_path(g, &comp, &residual);
        if path.len() > best.len() {
            best = path;
        }
    }

    let holds = best.len() < k;
    Ok(BranchReport {
        k,
        holds,
        interior: interior.iter().filter(|&&b| b).count(),
        branch_points: (0..n).filter(|&v| interior[v] && is_branch[v]).count(),
        longest_free_path: best.len(),
        witness: (!holds).then(|| best.iter().map(|&v| g.id(v).clone()).collect()),
    })
}

fn component(g: &FiniteGraph, s: u32, keep: &impl Fn(u32) -> bool) -> Vec<u32> {
    let mut comp = vec![s];
    let mut head = 0;
    let mut inside = std::collections::HashSet::from([s]);
    while head < comp.len() {
        let v = comp[head];
        head += 1;
        for &w in g.neighbors(v) {
            if keep(w) && inside.insert(w) {
                comp.push(w);
            }
        }
    }
    comp
}

/// Longest path of a subtree by double sweep; the first sweep starts at the
/// lowest index and ties go to the first vertex reached.
fn longest_path(g: &FiniteGraph, comp: &[u32], keep: &impl Fn(u32) -> bool) -> Vec<u32> {
    let start = *comp.iter().min().unwrap();
    let (end, _) = sweep(g, start, keep);
    let (other, parents) = sweep(g, end, keep);
    let mut path = vec![other];
    let mut v = other;
    while v != end {
        v = parents[&v];
        path.push(v);
    }
    if path[0] > path[path.len() - 1] {
        path.reverse();
    }
    path
}

fn sweep(
    g: &FiniteGraph,
    s: u32,
    keep: &impl Fn(u32) -> bool,
) -> (u32, std::collections::HashMap<u32, u32>) {
    let mut parents = std::collections::HashMap::from([(s, s)]);
    let mut queue = vec![s];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &w in g.neighbors(v) {
            if keep(w) && !parents.contains_key(&w) {
                parents.insert(w, v);
                queue.push(w);
            }
        }
    }
    (*queue.last().unwrap(), parents)
}
