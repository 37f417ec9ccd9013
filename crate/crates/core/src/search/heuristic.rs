use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::counter::BoundaryCounter;
use super::exact::merge;
use super::profile::{Candidate, IsoProfile, Method};
use crate::error::{Error, Result};
use crate::graph::{require_interior, FiniteGraph, MarginMode, Truncation, VertexSet};

/// Geometric cooling: temperature `initial_temperature · cooling^step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Schedule {
    pub initial_temperature: f64,
    pub cooling: f64,
    pub steps: usize,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { initial_temperature: 2.0, cooling: 0.995, steps: 2000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub region: VertexSet,
    pub n_max: usize,
    pub seed: u64,
    /// Random greedy starting vertices, besides the region vertex nearest the root.
    pub greedy_seeds: usize,
    /// Annealing chains per set size.
    pub chains: usize,
    pub schedule: Schedule,
    /// Extra candidate sets, scored as-is and used as annealing starts.
    pub seed_sets: Vec<VertexSet>,
}

impl SearchConfig {
    pub fn new(region: VertexSet, n_max: usize, seed: u64) -> Self {
        SearchConfig {
            region,
            n_max,
            seed,
            greedy_seeds: 8,
            chains: 4,
            schedule: Schedule::default(),
            seed_sets: Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let s = &self.schedule;
        if !(s.initial_temperature > 0.0 && s.initial_temperature.is_finite()) || !(s.cooling > 0.0 && s.cooling <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "annealing needs temperature > 0 and cooling in (0, 1], got {} and {}",
                s.initial_temperature, s.cooling
            )));
        }
        Ok(())
    }
}

/// Best boundary found per size from greedy growth, the configured seed
/// sets, and swap-move annealing started from the best of those. Size 1 is
/// scanned exhaustively.
pub fn heuristic_profile(g: &FiniteGraph, t: &Truncation, config: &SearchConfig) -> Result<IsoProfile> {
    config.validate()?;
    let region = &config.region;
    require_interior(g, t, region, MarginMode::Boundary)?;
    let n_max = config.n_max.min(region.len());
    let mut best: Vec<Option<Candidate>> = vec![None; n_max + 1];
    if n_max == 0 {
        return Ok(IsoProfile::default());
    }
    for v in region.iter() {
        Candidate::offer(&mut best[1], g.degree(v), &[v]);
    }

    let mut in_region = vec![false; g.len()];
    for v in region.iter() {
        in_region[v as usize] = true;
    }
    let mut counter = BoundaryCounter::new(g.len());
    for s in &config.seed_sets {
        if s.len() > n_max || s.is_empty() || !s.iter().all(|v| (v as usize) < g.len() && in_region[v as usize]) {
            return Err(Error::InvalidParameter("seed set must be a nonempty subset of the region within n_max".into()));
        }
        for v in s.iter() {
            counter.insert(g, v);
        }
        Candidate::offer(&mut best[s.len()], counter.boundary(), s.as_slice());
        counter.clear(g, s.as_slice());
    }

    let starts = greedy_starts(t, region, config);
    let grown: Vec<Vec<Option<Candidate>>> =
        starts.par_iter().map(|&s| greedy(g, &in_region, s, n_max)).collect();
    let mut parts = grown;
    parts.push(best);
    let best = merge(parts, n_max);

    let jobs: Vec<(usize, u64)> = (2..=n_max)
        .filter(|&n| n < region.len() && best[n].is_some())
        .flat_map(|n| (0..config.chains as u64).map(move |c| (n, c)))
        .collect();
    let annealed: Vec<(usize, Candidate)> = jobs
        .par_iter()
        .map(|&(n, chain)| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(((n as u64) << 16) | chain);
            (n, anneal(g, region, &in_region, best[n].as_ref().unwrap(), &config.schedule, &mut rng))
        })
        .collect();
    let mut parts = vec![best];
    for (n, c) in annealed {
        let mut v = vec![None; n_max + 1];
        v[n] = Some(c);
        parts.push(v);
    }
    Ok(IsoProfile::from_candidates(merge(parts, n_max), Method::Heuristic))
}

/// The region vertex nearest the root (lowest index on ties) plus a seeded
/// sample of further region vertices.
fn greedy_starts(t: &Truncation, region: &VertexSet, config: &SearchConfig) -> Vec<u32> {
    let mut starts: Vec<u32> = region.iter().min_by_key(|&v| (t.dist(v), v)).into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let k = config.greedy_seeds.min(region.len());
    starts.extend(sample(&mut rng, region.len(), k).iter().map(|i| region.as_slice()[i]));
    starts.sort_unstable();
    starts.dedup();
    starts
}

/// Grows a set from `start` by repeatedly adding the adjacent region vertex
/// that minimizes the new boundary, lowest index on ties.
fn greedy(g: &FiniteGraph, in_region: &[bool], start: u32, n_max: usize) -> Vec<Option<Candidate>> {
    let mut best = vec![None; n_max + 1];
    let mut counter = BoundaryCounter::new(g.len());
    let mut members = vec![start];
    let mut frontier = BTreeSet::new();
    counter.insert(g, start);
    loop {
        Candidate::offer(&mut best[members.len()], counter.boundary(), &members);
        let last = *members.last().unwrap();
        frontier.remove(&last);
        frontier.extend(g.neighbors(last).iter().copied().filter(|&w| in_region[w as usize] && !counter.contains(w)));
        if members.len() == n_max {
            break;
        }
        let Some(next) = frontier.iter().copied().min_by_key(|&w| (counter.boundary_if_inserted(g, w), w)) else {
            break;
        };
        counter.insert(g, next);
        members.push(next);
    }
    best
}

fn anneal(
    g: &FiniteGraph,
    region: &VertexSet,
    in_region: &[bool],
    start: &Candidate,
    schedule: &Schedule,
    rng: &mut ChaCha8Rng,
) -> Candidate {
    let mut counter = BoundaryCounter::new(g.len());
    let mut members: Vec<u32> = start.set.as_slice().to_vec();
    for &v in &members {
        counter.insert(g, v);
    }
    let mut best = Some(start.clone());
    let mut temp = schedule.initial_temperature;
    let mut candidates = Vec::new();
    for _ in 0..schedule.steps {
        candidates.clear();
        candidates.extend(
            members.iter().flat_map(|&v| g.neighbors(v).iter().copied()).filter(|&w| in_region[w as usize] && counter.is_boundary(w)),
        );
        candidates.sort_unstable();
        candidates.dedup();
        let i = rng.gen_range(0..members.len());
        let add = if candidates.is_empty() || rng.gen_bool(0.1) {
            let w = region.as_slice()[rng.gen_range(0..region.len())];
            if counter.contains(w) {
                temp *= schedule.cooling;
                continue;
            }
            w
        } else {
            candidates[rng.gen_range(0..candidates.len())]
        };
        let before = counter.boundary();
        let drop = members[i];
        counter.remove(g, drop);
        counter.insert(g, add);
        let delta = counter.boundary() as f64 - before as f64;
        if delta <= 0.0 || rng.gen::<f64>() < (-delta / temp).exp() {
            members[i] = add;
            if best.as_ref().is_some_and(|b| counter.boundary() <= b.boundary) {
                Candidate::offer(&mut best, counter.boundary(), &members);
            }
        } else {
            counter.remove(g, add);
            counter.insert(g, drop);
        }
        temp *= schedule.cooling;
    }
    best.unwrap()
}
