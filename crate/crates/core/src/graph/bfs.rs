use super::FiniteGraph;

/// Reusable BFS state. Visited marks are generation-stamped so repeated
/// searches on a large graph do not pay for clearing.
#[derive(Debug, Clone)]
pub(crate) struct BfsScratch {
    mark: Vec<u32>,
    dist: Vec<u32>,
    stamp: u32,
    queue: Vec<u32>,
}

impl BfsScratch {
    pub(crate) fn new(n: usize) -> Self {
        BfsScratch { mark: vec![0; n], dist: vec![0; n], stamp: 0, queue: Vec::new() }
    }

    fn next_stamp(&mut self) {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.fill(0);
            self.stamp = 1;
        }
    }

    /// Visits vertices in BFS order up to `max_depth` from `sources`, calling
    /// `visit(v, d)`; returning `false` stops the search.
    pub(crate) fn run(
        &mut self,
        g: &FiniteGraph,
        sources: &[u32],
        max_depth: u32,
        mut visit: impl FnMut(u32, u32) -> bool,
    ) {
        self.next_stamp();
        self.queue.clear();
        for &s in sources {
            if self.mark[s as usize] != self.stamp {
                self.mark[s as usize] = self.stamp;
                self.dist[s as usize] = 0;
                self.queue.push(s);
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            let d = self.dist[v as usize];
            if !visit(v, d) {
                return;
            }
            if d >= max_depth {
                continue;
            }
            for &w in g.neighbors(v) {
                if self.mark[w as usize] != self.stamp {
                    self.mark[w as usize] = self.stamp;
                    self.dist[w as usize] = d + 1;
                    self.queue.push(w);
                }
            }
        }
    }

    /// Ball sizes `|B(v, r)|` for `r = 0..=r_max`, no margin check.
    pub(crate) fn ball_sizes(&mut self, g: &FiniteGraph, v: u32, r_max: u32) -> Vec<usize> {
        let mut shells = vec![0usize; r_max as usize + 1];
        self.run(g, &[v], r_max, |_, d| {
            shells[d as usize] += 1;
            true
        });
        let mut acc = 0;
        for s in shells.iter_mut() {
            acc += *s;
            *s = acc;
        }
        shells
    }

    /// Vertices within distance `r` of any source, unsorted.
    pub(crate) fn ball_members(&mut self, g: &FiniteGraph, sources: &[u32], r: u32) -> Vec<u32> {
        let mut out = Vec::new();
        self.run(g, sources, r, |v, _| {
            out.push(v);
            true
        });
        out
    }
}
