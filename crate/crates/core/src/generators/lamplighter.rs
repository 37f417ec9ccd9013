use smallvec::SmallVec;

use crate::graph::{GraphOracle, VertexId};

/// The lamplighter group Z/2 wr Z with generating set {flip the lamp at the
/// lighter's position, step right, step left}; a 3-regular Cayley graph.
///
/// A state is encoded as `[position, lit lamps in increasing order...]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Lamplighter;

/// Encodes a lamplighter state. `lamps` may be unsorted; duplicates cancel.
pub fn lamplighter_state(position: i64, lamps: &[i64]) -> VertexId {
    let mut sorted: Vec<i64> = lamps.to_vec();
    sorted.sort_unstable();
    let mut c: SmallVec<[i64; 4]> = SmallVec::with_capacity(sorted.len() + 1);
    c.push(position);
    let mut i = 0;
    while i < sorted.len() {
        if i + 1 < sorted.len() && sorted[i] == sorted[i + 1] {
            i += 2;
        } else {
            c.push(sorted[i]);
            i += 1;
        }
    }
    VertexId::from_vec(c)
}

/// The box set: lighter position in `0..=n`, every lamp configuration
/// supported in `0..=n`. It has `(n + 1)·2^(n+1)` elements.
pub fn lamplighter_box(n: u32) -> Vec<VertexId> {
    let width = n as i64 + 1;
    let mut out = Vec::with_capacity((width as usize) << width);
    for mask in 0u64..(1 << width) {
        let lamps: Vec<i64> = (0..width).filter(|b| mask >> b & 1 == 1).collect();
        for pos in 0..width {
            out.push(lamplighter_state(pos, &lamps));
        }
    }
    out.sort();
    out
}

fn flip(c: &[i64]) -> SmallVec<[i64; 4]> {
    let pos = c[0];
    let lamps = &c[1..];
    let mut out: SmallVec<[i64; 4]> = SmallVec::with_capacity(c.len() + 1);
    out.push(pos);
    match lamps.binary_search(&pos) {
        Ok(i) => {
            out.extend_from_slice(&lamps[..i]);
            out.extend_from_slice(&lamps[i + 1..]);
        }
        Err(i) => {
            out.extend_from_slice(&lamps[..i]);
            out.push(pos);
            out.extend_from_slice(&lamps[i..]);
        }
    }
    out
}

fn step(c: &[i64], delta: i64) -> SmallVec<[i64; 4]> {
    let mut out: SmallVec<[i64; 4]> = SmallVec::from_slice(c);
    out[0] += delta;
    out
}

impl GraphOracle for Lamplighter {
    fn neighbors(&self, v: &VertexId) -> Vec<VertexId> {
        if !self.contains(v) {
            return Vec::new();
        }
        let c = v.as_coords().unwrap();
        let mut out = vec![
            VertexId::from_vec(flip(c)),
            VertexId::from_vec(step(c, 1)),
            VertexId::from_vec(step(c, -1)),
        ];
        out.sort();
        out
    }

    fn contains(&self, v: &VertexId) -> bool {
        match v.as_coords() {
            Some(c) if !c.is_empty() => c[1..].windows(2).all(|w| w[0] < w[1]),
            _ => false,
        }
    }

    fn uniform_degree(&self) -> Option<usize> {
        Some(3)
    }

    fn family(&self) -> String {
        "lamplighter".to_string()
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(VertexId::coords(&[0]))
    }
}
