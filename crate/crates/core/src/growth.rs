//! Ball-growth profiles, pinch constant fitting and verification, and the
//! inverse growth function `phi`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use log::warn;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BfsScratch, FiniteGraph, Truncation, VertexId};
use crate::numeric::least_squares;

/// Ball-size sequences `|B(v, r)|`, `r = 0..=r_max`, for sampled vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthProfile {
    pub r_max: u32,
    pub rows: Vec<ProfileRow>,
    /// Sample vertices skipped because their balls would leave the truncation.
    pub dropped: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileRow {
    pub vertex: VertexId,
    pub sizes: Vec<usize>,
}

/// Deterministic stratified sample: one vertex per distance shell (the lowest
/// id in the shell), restricted to shells whose balls of radius `r_max` are
/// exact.
pub fn stratified_sample(t: &Truncation, r_max: u32) -> Vec<u32> {
    let mut by_shell: BTreeMap<u32, u32> = BTreeMap::new();
    for (v, &d) in t.distances().iter().enumerate() {
        if d == u32::MAX || !t.ball_exact(v as u32, r_max) {
            continue;
        }
        by_shell.entry(d).or_insert(v as u32);
    }
    by_shell.into_values().collect()
}

/// Collects ball sizes for each sample vertex in parallel. Vertices failing
/// the exactness margin are dropped with a warning rather than failing the run.
pub fn growth_profile(g: &FiniteGraph, t: &Truncation, sample: &[u32], r_max: u32) -> GrowthProfile {
    let mut sample: Vec<u32> = sample.to_vec();
    sample.sort_unstable();
    sample.dedup();
    let (keep, drop): (Vec<u32>, Vec<u32>) = sample.into_iter().partition(|&v| t.ball_exact(v, r_max));
    for &v in &drop {
        warn!("dropping sample {}: ball of radius {r_max} is not exact in this truncation", g.id(v));
    }
    let rows = keep
        .par_iter()
        .map_init(
            || BfsScratch::new(g.len()),
            |bfs, &v| ProfileRow { vertex: g.id(v).clone(), sizes: bfs.ball_sizes(g, v, r_max) },
        )
        .collect();
    GrowthProfile { r_max, rows, dropped: drop.into_iter().map(|v| g.id(v).clone()).collect() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bound {
    Lower,
    Upper,
}

/// Which inequalities to check at a sample vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Both,
    LowerOnly,
    UpperOnly,
}

impl Side {
    fn checks(self, b: Bound) -> bool {
        matches!((self, b), (Side::Both, _) | (Side::LowerOnly, Bound::Lower) | (Side::UpperOnly, Bound::Upper))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub vertex: VertexId,
    pub radius: u32,
    pub observed: usize,
    pub bound: Bound,
    /// The violated limit: `a^r / c` for lower, `c·a^r` for upper.
    pub limit: f64,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let op = match self.bound {
            Bound::Lower => "<",
            Bound::Upper => ">",
        };
        write!(f, "|B({}, {})| = {} {op} {:.6}", self.vertex, self.radius, self.observed, self.limit)
    }
}

/// Fitted base `a` and pinch constant `c`, with the radius range `[1, r_max]`
/// over which `c⁻¹·a^r <= |B(v,r)| <= c·a^r` was checked.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PinchEstimate {
    pub a: f64,
    pub c: f64,
    pub r_min: u32,
    pub r_max: u32,
    pub violations: Vec<Violation>,
    /// Sampled `(v, r)` at which one of the inequalities holds with equality.
    pub equalities: usize,
}

#[derive(Debug, Default)]
struct CheckOutcome {
    violations: Vec<Violation>,
    equalities: usize,
}

fn check_sizes(
    vertex: &VertexId,
    sizes: &[usize],
    a: f64,
    c: f64,
    side: Side,
    radii: std::ops::RangeInclusive<u32>,
    out: &mut CheckOutcome,
) {
    for r in radii {
        let observed = sizes[r as usize];
        let ar = a.powi(r as i32);
        let b = observed as f64;
        // Compared in ratio form so that a `c` taken as the exact maximum
        // ratio never flags its own extremal point.
        for (bound, ratio, limit) in [(Bound::Lower, ar / b, ar / c), (Bound::Upper, b / ar, c * ar)] {
            if !side.checks(bound) {
                continue;
            }
            if ratio > c {
                out.violations.push(Violation { vertex: vertex.clone(), radius: r, observed, bound, limit });
            } else if ratio == c {
                out.equalities += 1;
            }
        }
    }
}

fn check_params(a: f64, c: f64) -> Result<()> {
    if !(a > 1.0 && a.is_finite()) {
        return Err(Error::InvalidParameter(format!("growth base a = {a} must be > 1")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("pinch constant c = {c} must be positive")));
    }
    Ok(())
}

/// Fits `a` by pooled least squares of `ln|B(v,r)|` on `r` (radii `>= 1`),
/// then takes `c` as the exact envelope `max(a^r/|B|, |B|/a^r)`.
pub fn pinch_fit(profile: &GrowthProfile) -> Result<PinchEstimate> {
    let mut rows: Vec<&ProfileRow> = profile.rows.iter().collect();
    rows.sort_by(|x, y| x.vertex.cmp(&y.vertex));
    rows.dedup_by(|x, y| x.vertex == y.vertex);
    if rows.is_empty() {
        return Err(Error::DegenerateFit("profile has no sample vertices".into()));
    }
    if profile.r_max < 2 {
        return Err(Error::DegenerateFit("profile needs at least two radii >= 1".into()));
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .flat_map(|row| (1..=profile.r_max).map(move |r| (r as f64, (row.sizes[r as usize] as f64).ln())))
        .collect();
    let (slope, _) = least_squares(&points).ok_or_else(|| Error::DegenerateFit("singular design".into()))?;
    let a = slope.exp();
    if a.is_nan() || a <= 1.0 || !a.is_finite() {
        return Err(Error::DegenerateFit(format!("fitted growth base {a} is not > 1 (no exponential growth)")));
    }
    let mut c: f64 = 1.0;
    for row in &rows {
        for r in 1..=profile.r_max {
            let ar = a.powi(r as i32);
            let b = row.sizes[r as usize] as f64;
            c = c.max(ar / b).max(b / ar);
        }
    }
    let mut out = CheckOutcome::default();
    for row in &rows {
        check_sizes(&row.vertex, &row.sizes, a, c, Side::Both, 1..=profile.r_max, &mut out);
    }
    Ok(PinchEstimate { a, c, r_min: 1, r_max: profile.r_max, violations: out.violations, equalities: out.equalities })
}

/// Checks a profile against given constants on radii `1..=radius`.
pub fn pinch_verify_profile(profile: &GrowthProfile, a: f64, c: f64, radius: u32) -> Result<Vec<Violation>> {
    check_params(a, c)?;
    if radius > profile.r_max {
        return Err(Error::OutOfRange(format!("profile only reaches radius {}", profile.r_max)));
    }
    let mut out = CheckOutcome::default();
    for row in &profile.rows {
        check_sizes(&row.vertex, &row.sizes, a, c, Side::Both, 1..=radius, &mut out);
    }
    Ok(out.violations)
}

/// Verifies `c⁻¹·a^r <= |B(v,r)| <= c·a^r` for `r = 1..=radius` at each
/// sample, one-sided where requested. Empty result means verified.
pub fn pinch_verify(
    g: &FiniteGraph,
    t: &Truncation,
    a: f64,
    c: f64,
    radius: u32,
    sample: &[(u32, Side)],
) -> Result<Vec<Violation>> {
    check_params(a, c)?;
    for &(v, _) in sample {
        t.require_ball_exact(g, v, radius)?;
    }
    let per_vertex: Vec<CheckOutcome> = sample
        .par_iter()
        .map_init(
            || BfsScratch::new(g.len()),
            |bfs, &(v, side)| {
                let sizes = bfs.ball_sizes(g, v, radius);
                let mut out = CheckOutcome::default();
                check_sizes(g.id(v), &sizes, a, c, side, 1..=radius, &mut out);
                out
            },
        )
        .collect();
    Ok(per_vertex.into_iter().flat_map(|o| o.violations).collect())
}

/// `phi(n) = min { r >= 1 : |B(v, r)| >= n }`.
pub fn phi(g: &FiniteGraph, t: &Truncation, v: u32, n: usize) -> Result<u32> {
    if (v as usize) >= g.len() {
        return Err(Error::InvalidParameter(format!("vertex index {v} out of range")));
    }
    if n <= 1 {
        return Ok(1);
    }
    let max_r = if t.is_complete() {
        u32::MAX
    } else {
        t.radius().saturating_sub(t.dist(v))
    };
    let mut shells: Vec<usize> = Vec::new();
    BfsScratch::new(g.len()).run(g, &[v], max_r, |_, d| {
        if shells.len() <= d as usize {
            shells.resize(d as usize + 1, 0);
        }
        shells[d as usize] += 1;
        true
    });
    let mut acc = 0;
    for (r, s) in shells.iter().enumerate() {
        acc += s;
        if r >= 1 && acc >= n {
            return Ok(r as u32);
        }
    }
    if shells.len() < 2 && acc >= n {
        return Ok(1);
    }
    Err(Error::OutOfRange(format!(
        "|B({}, r)| < {n} for every radius the truncation certifies (up to {})",
        g.id(v),
        if t.is_complete() { shells.len().saturating_sub(1) as u32 } else { max_r }
    )))
}

/// `n -> phi(n)` for one anchor vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiTable {
    pub anchor: VertexId,
    pub values: BTreeMap<usize, u32>,
}

pub fn phi_table(g: &FiniteGraph, t: &Truncation, v: u32, ns: &[usize]) -> Result<PhiTable> {
    let values = ns.iter().map(|&n| Ok((n, phi(g, t, v, n)?))).collect::<Result<_>>()?;
    Ok(PhiTable { anchor: g.id(v).clone(), values })
}

/// CSV with columns `vertex,r,ball_size`.
pub fn write_profile_csv<W: Write>(profile: &GrowthProfile, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["vertex", "r", "ball_size"])?;
    for row in &profile.rows {
        for (r, s) in row.sizes.iter().enumerate() {
            out.write_record([row.vertex.to_string(), r.to_string(), s.to_string()])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Structured-text report. Logarithms are natural.
pub fn pinch_report(est: &PinchEstimate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "a = {:.12}", est.a);
    let _ = writeln!(s, "c = {:.12}", est.c);
    let _ = writeln!(s, "log_base = e");
    let _ = writeln!(s, "radius_range = {}..{}", est.r_min, est.r_max);
    let _ = writeln!(s, "equality_cases = {}", est.equalities);
    let _ = writeln!(s, "violations = {}", est.violations.len());
    for v in &est.violations {
        let _ = writeln!(s, "violation = {v}");
    }
    s
}
