use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::counter::BoundaryCounter;
use super::enumerate::Walker;
use super::profile::{Candidate, IsoProfile, Method};
use crate::error::{Error, Result};
use crate::graph::{boundary_unchecked, require_interior, FiniteGraph, MarginMode, Truncation, VertexSet};

/// Default cap on the number of sets an exact search may visit.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Largest region the all-subsets scan accepts.
pub const MAX_ALL_REGION: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactMode {
    /// Every subset of the region.
    All,
    /// Connected induced subsets only.
    Connected,
}

impl std::str::FromStr for ExactMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(ExactMode::All),
            "connected" => Ok(ExactMode::Connected),
            _ => Err(Error::InvalidParameter(format!("unknown mode {s:?} (expected all or connected)"))),
        }
    }
}

/// Minimum `|∂A|` over subsets of `region` of each size `1..=n_max`.
///
/// Ties go to the lexicographically smallest sorted witness. Fails with a
/// budget error once more than `budget` sets have been visited.
pub fn exact_profile(
    g: &FiniteGraph,
    t: &Truncation,
    region: &VertexSet,
    n_max: usize,
    mode: ExactMode,
    budget: u64,
) -> Result<IsoProfile> {
    require_interior(g, t, region, MarginMode::Boundary)?;
    let n_max = n_max.min(region.len());
    let best = match mode {
        ExactMode::Connected => connected_scan(g, region, n_max, budget)?,
        ExactMode::All => all_scan(g, region, n_max, budget)?,
    };
    let method = match mode {
        ExactMode::All => Method::ExactAll,
        ExactMode::Connected => Method::ExactConnected,
    };
    Ok(IsoProfile::from_candidates(best, method))
}

fn connected_scan(g: &FiniteGraph, region: &VertexSet, n_max: usize, budget: u64) -> Result<Vec<Option<Candidate>>> {
    let visited = AtomicU64::new(0);
    let over = AtomicBool::new(false);
    let per_root: Vec<Vec<Option<Candidate>>> = region
        .as_slice()
        .par_iter()
        .map(|&root| {
            let mut walker = Walker::new(g, region);
            let mut counter = BoundaryCounter::new(g.len());
            let mut best: Vec<Option<Candidate>> = vec![None; n_max + 1];
            let mut members: Vec<u32> = Vec::new();
            let mut local = 0u64;
            let _ = walker.walk_from(root, n_max, &mut |set: &[u32]| {
                let p = members.iter().zip(set).take_while(|(a, b)| a == b).count();
                while members.len() > p {
                    counter.remove(g, members.pop().unwrap());
                }
                for &v in &set[p..] {
                    counter.insert(g, v);
                    members.push(v);
                }
                local += 1;
                if local.is_multiple_of(4096) {
                    if visited.fetch_add(4096, Ordering::Relaxed) + 4096 > budget {
                        over.store(true, Ordering::Relaxed);
                    }
                    if over.load(Ordering::Relaxed) {
                        return ControlFlow::Break(());
                    }
                }
                let b = counter.boundary();
                let slot = &mut best[set.len()];
                if slot.as_ref().is_none_or(|c| b <= c.boundary) {
                    Candidate::offer(slot, b, set);
                }
                ControlFlow::Continue(())
            });
            if visited.fetch_add(local % 4096, Ordering::Relaxed) + local % 4096 > budget {
                over.store(true, Ordering::Relaxed);
            }
            best
        })
        .collect();
    if over.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(budget));
    }
    Ok(merge(per_root, n_max))
}

pub(crate) fn merge(parts: Vec<Vec<Option<Candidate>>>, n_max: usize) -> Vec<Option<Candidate>> {
    let mut best: Vec<Option<Candidate>> = vec![None; n_max + 1];
    for part in parts {
        for (slot, c) in best.iter_mut().zip(part) {
            if let Some(c) = c {
                if slot.as_ref().is_none_or(|s| c.key() < s.key()) {
                    *slot = Some(c);
                }
            }
        }
    }
    best
}

fn all_scan(g: &FiniteGraph, region: &VertexSet, n_max: usize, budget: u64) -> Result<Vec<Option<Candidate>>> {
    let m = region.len();
    if m > MAX_ALL_REGION {
        return Err(Error::InvalidParameter(format!(
            "all-subsets mode needs a region of at most {MAX_ALL_REGION} vertices, got {m}"
        )));
    }
    let total: u64 = (1..=n_max).map(|k| binomial(m as u64, k as u64)).sum();
    if total > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    // Closed neighborhoods as bitsets over region ∪ ∂(region).
    let closure = {
        let mut c = region.as_slice().to_vec();
        c.extend(boundary_unchecked(g, region).iter());
        c.sort_unstable();
        c
    };
    let words = closure.len().div_ceil(64);
    let local = |v: u32| closure.binary_search(&v).unwrap();
    let nbhd: Vec<Vec<u64>> = region
        .iter()
        .map(|v| {
            let mut bits = vec![0u64; words];
            for &w in g.neighbors(v) {
                let i = local(w);
                bits[i / 64] |= 1 << (i % 64);
            }
            bits
        })
        .collect();
    let own: Vec<usize> = region.iter().map(local).collect();

    const CHUNK: u64 = 1 << 14;
    let chunks = (1u64 << m).div_ceil(CHUNK);
    let parts: Vec<Vec<Option<Candidate>>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut best: Vec<Option<Candidate>> = vec![None; n_max + 1];
            let mut acc = vec![0u64; words];
            let mut set = Vec::with_capacity(n_max);
            for mask in chunk * CHUNK..((chunk + 1) * CHUNK).min(1 << m) {
                let k = mask.count_ones() as usize;
                if k == 0 || k > n_max {
                    continue;
                }
                acc.fill(0);
                set.clear();
                let mut rest = mask;
                while rest != 0 {
                    let i = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    for (a, b) in acc.iter_mut().zip(&nbhd[i]) {
                        *a |= b;
                    }
                    set.push(region.as_slice()[i]);
                }
                let mut rest = mask;
                while rest != 0 {
                    let i = own[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                    acc[i / 64] &= !(1 << (i % 64));
                }
                let b: usize = acc.iter().map(|w| w.count_ones() as usize).sum();
                let slot = &mut best[k];
                if slot.as_ref().is_none_or(|c| b <= c.boundary) {
                    Candidate::offer(slot, b, &set);
                }
            }
            best
        })
        .collect();
    Ok(merge(parts, n_max))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
