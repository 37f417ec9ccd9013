use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::graph::{GraphOracle, VertexId};

type Word = SmallVec<[i64; 4]>;

/// The `d`-regular tree. Vertices are reduced words: the first letter picks one
/// of the `d` root edges, each later letter one of the `d - 1` children.
#[derive(Debug, Clone, Copy)]
pub struct RegularTree {
    degree: u32,
}

impl RegularTree {
    pub fn new(degree: u32) -> Result<Self> {
        if degree < 3 {
            return Err(Error::InvalidParameter(format!("regular tree degree {degree} < 3")));
        }
        Ok(RegularTree { degree })
    }

    fn valid_word(&self, w: &[i64]) -> bool {
        w.iter().enumerate().all(|(i, &x)| {
            let bound = if i == 0 { self.degree } else { self.degree - 1 };
            (0..bound as i64).contains(&x)
        })
    }

    fn word_neighbors(&self, w: &[i64]) -> Vec<Word> {
        let mut out = Vec::with_capacity(self.degree as usize);
        if let Some((_, parent)) = w.split_last() {
            out.push(Word::from_slice(parent));
        }
        let fan = if w.is_empty() { self.degree } else { self.degree - 1 };
        for j in 0..fan as i64 {
            let mut c = Word::from_slice(w);
            c.push(j);
            out.push(c);
        }
        out
    }
}

impl GraphOracle for RegularTree {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId> {
        match v.as_coords() {
            Some(w) if self.valid_word(w) => self.word_neighbors(w).into_iter().map(VertexId::from_vec).collect(),
            _ => Vec::new(),
        }
    }

    fn contains(&self, v: &VertexId) -> bool {
        v.as_coords().is_some_and(|w| self.valid_word(w))
    }

    fn uniform_degree(&self) -> Option<usize> {
        Some(self.degree as usize)
    }

    fn family(&self) -> String {
        format!("tree:{}", self.degree)
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(VertexId::coords(&[]))
    }
}

/// Full binary tree of the given depth in heap numbering: root `1`, children
/// of `h` are `2h` and `2h + 1`; `2^(depth+1) - 1` vertices.
#[derive(Debug, Clone, Copy)]
pub struct BinaryTree {
    depth: u32,
}

impl BinaryTree {
    pub fn new(depth: u32) -> Result<Self> {
        if depth > 40 {
            return Err(Error::InvalidParameter(format!("binary tree depth {depth} > 40")));
        }
        Ok(BinaryTree { depth })
    }
}

pub(crate) fn heap_depth(h: i64) -> u32 {
    63 - h.leading_zeros()
}

/// Neighbors of heap node `h` inside a full binary tree of depth `depth`,
/// excluding the root's external attachment.
pub(crate) fn heap_neighbors(h: i64, depth: u32) -> (Option<i64>, Option<[i64; 2]>) {
    let parent = (h > 1).then_some(h / 2);
    let children = (heap_depth(h) < depth).then(|| {
        let c = h.checked_mul(2).expect("heap index overflow");
        [c, c + 1]
    });
    (parent, children)
}

impl GraphOracle for BinaryTree {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId> {
        if !self.contains(v) {
            return Vec::new();
        }
        let h = v.as_coords().unwrap()[0];
        let (parent, children) = heap_neighbors(h, self.depth);
        parent
            .into_iter()
            .chain(children.into_iter().flatten())
            .map(|x| VertexId::coords(&[x]))
            .collect()
    }

    fn contains(&self, v: &VertexId) -> bool {
        matches!(v.as_coords(), Some(&[h]) if h >= 1 && heap_depth(h) <= self.depth)
    }

    fn uniform_degree(&self) -> Option<usize> {
        match self.depth {
            0 => Some(0),
            _ => None,
        }
    }

    fn family(&self) -> String {
        format!("binary:{}", self.depth)
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(VertexId::coords(&[1]))
    }
}

/// The 3-regular tree with every edge replaced by a path through `k` new
/// degree-2 vertices.
///
/// Ids: `[0, w..]` is the branch vertex with tree word `w`; `[i, w..]` with
/// `1 <= i <= k` is the `i`-th subdivision vertex on the edge from the parent
/// of `w` down to `w`.
#[derive(Debug, Clone, Copy)]
pub struct SubdividedTree {
    k: u32,
    base: RegularTree,
}

impl SubdividedTree {
    pub fn new(k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidParameter("subdivision count must be >= 1".into()));
        }
        Ok(SubdividedTree { k, base: RegularTree { degree: 3 } })
    }

    /// Number of degree-2 vertices on each original edge.
    pub fn subdivisions(&self) -> u32 {
        self.k
    }

    fn split(v: &VertexId) -> Option<(i64, &[i64])> {
        v.as_coords().and_then(|c| c.split_first()).map(|(i, w)| (*i, w))
    }

    fn id(i: i64, w: &[i64]) -> VertexId {
        let mut c = SmallVec::with_capacity(w.len() + 1);
        c.push(i);
        c.extend_from_slice(w);
        VertexId::from_vec(c)
    }
}

impl GraphOracle for SubdividedTree {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId> {
        if !self.contains(v) {
            return Vec::new();
        }
        let (i, w) = Self::split(v).unwrap();
        let k = self.k as i64;
        let mut out = Vec::with_capacity(3);
        if i == 0 {
            if !w.is_empty() {
                out.push(Self::id(k, w));
            }
            for child in self.base.word_neighbors(w).into_iter().filter(|c| c.len() > w.len()) {
                out.push(Self::id(1, &child));
            }
        } else {
            if i == 1 {
                out.push(Self::id(0, &w[..w.len() - 1]));
            } else {
                out.push(Self::id(i - 1, w));
            }
            if i == k {
                out.push(Self::id(0, w));
            } else {
                out.push(Self::id(i + 1, w));
            }
        }
        out.sort();
        out
    }

    fn contains(&self, v: &VertexId) -> bool {
        match Self::split(v) {
            Some((0, w)) => self.base.valid_word(w),
            Some((i, w)) => i >= 1 && i <= self.k as i64 && !w.is_empty() && self.base.valid_word(w),
            None => false,
        }
    }

    fn uniform_degree(&self) -> Option<usize> {
        None
    }

    fn family(&self) -> String {
        format!("subdiv:{}", self.k)
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(VertexId::coords(&[0]))
    }
}
