use std::ops::ControlFlow;

use crate::graph::{FiniteGraph, VertexSet};

/// Calls `visit` on every connected induced subset of `region` with exactly
/// `n` vertices, once each. Sets are passed unsorted, in insertion order.
///
/// Uses extension sets keyed on the smallest vertex: each set is grown from
/// its minimum, and a vertex joins the extension only when it is adjacent to
/// the newest vertex and to nothing already in the set.
pub fn enum_connected_sets(
    g: &FiniteGraph,
    region: &VertexSet,
    n: usize,
    mut visit: impl FnMut(&[u32]) -> ControlFlow<()>,
) {
    if n == 0 {
        return;
    }
    let mut walker = Walker::new(g, region);
    for root in region.iter() {
        if walker
            .walk_from(root, n, &mut |set: &[u32]| if set.len() == n { visit(set) } else { ControlFlow::Continue(()) })
            .is_break()
        {
            return;
        }
    }
}

/// All connected subsets of size `n`, each sorted, in enumeration order.
pub fn connected_sets(g: &FiniteGraph, region: &VertexSet, n: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    enum_connected_sets(g, region, n, |s| {
        out.push(VertexSet::from_indices(s.iter().copied()));
        ControlFlow::Continue(())
    });
    out
}

pub(crate) struct Walker<'g> {
    g: &'g FiniteGraph,
    in_region: Vec<bool>,
    /// Vertices in the current set or adjacent to it.
    touched: Vec<u32>,
    set: Vec<u32>,
}

impl<'g> Walker<'g> {
    pub(crate) fn new(g: &'g FiniteGraph, region: &VertexSet) -> Self {
        let mut in_region = vec![false; g.len()];
        for v in region.iter() {
            in_region[v as usize] = true;
        }
        Walker { g, in_region, touched: vec![0; g.len()], set: Vec::new() }
    }

    /// Visits every connected subset of the region of size `1..=n` whose
    /// minimum is `root`, with `visit` seeing the set after each insertion.
    pub(crate) fn walk_from(
        &mut self,
        root: u32,
        n: usize,
        visit: &mut impl FnMut(&[u32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        self.push(root);
        let r = visit(&self.set).and_then(|| {
            let ext: Vec<u32> = self.g.neighbors(root).iter().copied().filter(|&w| w > root && self.in_region[w as usize]).collect();
            self.extend(root, ext, n, visit)
        });
        self.pop();
        r
    }

    fn extend(
        &mut self,
        root: u32,
        mut ext: Vec<u32>,
        n: usize,
        visit: &mut impl FnMut(&[u32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if self.set.len() == n {
            return ControlFlow::Continue(());
        }
        while let Some(w) = ext.pop() {
            // Exclusive neighbors of w: in the region, above the root, and
            // neither in nor adjacent to the current set.
            let mut next = ext.clone();
            next.extend(
                self.g
                    .neighbors(w)
                    .iter()
                    .copied()
                    .filter(|&x| x > root && self.in_region[x as usize] && self.touched[x as usize] == 0),
            );
            self.push(w);
            let r = visit(&self.set).and_then(|| self.extend(root, next, n, visit));
            self.pop();
            r?;
        }
        ControlFlow::Continue(())
    }

    fn push(&mut self, v: u32) {
        self.set.push(v);
        self.touched[v as usize] += 1;
        for &w in self.g.neighbors(v) {
            self.touched[w as usize] += 1;
        }
    }

    fn pop(&mut self) {
        let v = self.set.pop().unwrap();
        self.touched[v as usize] -= 1;
        for &w in self.g.neighbors(v) {
            self.touched[w as usize] -= 1;
        }
    }
}

trait AndThen {
    fn and_then(self, f: impl FnOnce() -> Self) -> Self;
}

impl AndThen for ControlFlow<()> {
    fn and_then(self, f: impl FnOnce() -> Self) -> Self {
        match self {
            ControlFlow::Continue(()) => f(),
            b => b,
        }
    }
}
