use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::graph::{GraphOracle, VertexId};

/// Z^d with the `2d` unit generators.
#[derive(Debug, Clone, Copy)]
pub struct Lattice {
    dim: u32,
}

impl Lattice {
    pub fn new(dim: u32) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidParameter("lattice dimension must be >= 1".into()));
        }
        Ok(Lattice { dim })
    }
}

impl GraphOracle for Lattice {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId> {
        if !self.contains(v) {
            return Vec::new();
        }
        let p = v.as_coords().unwrap();
        let mut out = Vec::with_capacity(2 * self.dim as usize);
        for i in 0..p.len() {
            for step in [-1i64, 1] {
                let mut q: SmallVec<[i64; 4]> = SmallVec::from_slice(p);
                q[i] += step;
                out.push(VertexId::from_vec(q));
            }
        }
        out.sort();
        out
    }

    fn contains(&self, v: &VertexId) -> bool {
        v.as_coords().is_some_and(|c| c.len() == self.dim as usize)
    }

    fn uniform_degree(&self) -> Option<usize> {
        Some(2 * self.dim as usize)
    }

    fn family(&self) -> String {
        format!("grid:{}", self.dim)
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(VertexId::coords(&vec![0; self.dim as usize]))
    }
}

/// Discrete torus `Z/n_1 × ... × Z/n_k` with unit generators; a cycle when
/// `k = 1`.
#[derive(Debug, Clone)]
pub struct Torus {
    sides: Vec<u32>,
}

impl Torus {
    pub fn new(sides: Vec<u32>) -> Result<Self> {
        if sides.is_empty() || sides.iter().any(|&n| n < 3) {
            return Err(Error::InvalidParameter("torus sides must be >= 3".into()));
        }
        Ok(Torus { sides })
    }
}

impl GraphOracle for Torus {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId> {
        if !self.contains(v) {
            return Vec::new();
        }
        let p = v.as_coords().unwrap();
        let mut out = Vec::with_capacity(2 * p.len());
        for (i, &n) in self.sides.iter().enumerate() {
            let n = n as i64;
            for step in [n - 1, 1] {
                let mut q: SmallVec<[i64; 4]> = SmallVec::from_slice(p);
                q[i] = (q[i] + step) % n;
                out.push(VertexId::from_vec(q));
            }
        }
        out.sort();
        out
    }

    fn contains(&self, v: &VertexId) -> bool {
        v.as_coords().is_some_and(|c| {
            c.len() == self.sides.len() && c.iter().zip(&self.sides).all(|(&x, &n)| (0..n as i64).contains(&x))
        })
    }

    fn uniform_degree(&self) -> Option<usize> {
        Some(2 * self.sides.len())
    }

    fn family(&self) -> String {
        if self.sides.len() == 1 {
            format!("cycle:{}", self.sides[0])
        } else {
            let parts: Vec<String> = self.sides.iter().map(u32::to_string).collect();
            format!("torus:{}", parts.join("x"))
        }
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(VertexId::coords(&vec![0; self.sides.len()]))
    }
}

/// Path `0 - 1 - ... - (n-1)`.
#[derive(Debug, Clone, Copy)]
pub struct PathGraph {
    n: u32,
}

impl PathGraph {
    pub fn new(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("path needs at least one vertex".into()));
        }
        Ok(PathGraph { n })
    }
}

impl GraphOracle for PathGraph {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId> {
        if !self.contains(v) {
            return Vec::new();
        }
        let i = v.as_coords().unwrap()[0];
        [i - 1, i + 1]
            .into_iter()
            .filter(|j| (0..self.n as i64).contains(j))
            .map(|j| VertexId::coords(&[j]))
            .collect()
    }

    fn contains(&self, v: &VertexId) -> bool {
        matches!(v.as_coords(), Some(&[i]) if (0..self.n as i64).contains(&i))
    }

    fn uniform_degree(&self) -> Option<usize> {
        match self.n {
            1 => Some(0),
            2 => Some(1),
            _ => None,
        }
    }

    fn family(&self) -> String {
        format!("path:{}", self.n)
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(VertexId::coords(&[0]))
    }
}

/// Complete graph K_n on `0..n`.
#[derive(Debug, Clone, Copy)]
pub struct Complete {
    n: u32,
}

impl Complete {
    pub fn new(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("complete graph needs at least one vertex".into()));
        }
        Ok(Complete { n })
    }
}

impl GraphOracle for Complete {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId> {
        if !self.contains(v) {
            return Vec::new();
        }
        let i = v.as_coords().unwrap()[0];
        (0..self.n as i64).filter(|&j| j != i).map(|j| VertexId::coords(&[j])).collect()
    }

    fn contains(&self, v: &VertexId) -> bool {
        matches!(v.as_coords(), Some(&[i]) if (0..self.n as i64).contains(&i))
    }

    fn uniform_degree(&self) -> Option<usize> {
        Some(self.n as usize - 1)
    }

    fn family(&self) -> String {
        format!("complete:{}", self.n)
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(VertexId::coords(&[0]))
    }
}
