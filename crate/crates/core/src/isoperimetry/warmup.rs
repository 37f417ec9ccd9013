use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{boundary, BfsScratch, FiniteGraph, Truncation, VertexId, VertexSet};
use crate::growth::{pinch_verify, Side};

/// Quantities of the two-dimensional warm-up argument for one set.
///
/// `r` is the largest distance from a vertex of `A` to `∂A`, attained at `v*`.
/// The inclusions `B(v*, 2r) ⊆ ∪_{u∈∂A} B(u, r)` and `A ⊆ ∪_{u∈∂A} B(u, r)`
/// give `|∂A| >= a^r/c²` and `|∂A|·c·a^r >= |A|`, hence `|∂A|²·c³ >= |A|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WarmupReport {
    pub center: VertexId,
    pub radius: u32,
    pub set_size: usize,
    pub boundary_size: usize,
    /// `|B(v*, 2r)|`.
    pub ball_size: usize,
    /// `|∪_{u∈∂A} B(u, r)|`.
    pub cover_size: usize,
    pub ball_covered: bool,
    pub set_covered: bool,
    /// Violations of the lower pinch at `v*` (radius `2r`) and the upper
    /// pinch on `∂A` (radius `r`).
    pub pinch_violations: usize,
    /// `|∂A| >= a^r / c²`.
    pub growth_ok: bool,
    /// `|∂A|·c·a^r >= |A|`.
    pub volume_ok: bool,
    /// `|∂A|²·c³ / |A|`; at least 1 whenever the pinch holds.
    pub slack: f64,
}

impl WarmupReport {
    pub fn pinch_ok(&self) -> bool {
        self.pinch_violations == 0
    }
}

pub fn warmup_check(g: &FiniteGraph, t: &Truncation, set: &VertexSet, a: f64, c: f64) -> Result<WarmupReport> {
    if set.is_empty() {
        return Err(Error::InvalidParameter("warm-up needs a nonempty set".into()));
    }
    let bd = boundary(g, t, set)?;
    if bd.is_empty() {
        return Err(Error::InvalidParameter("set has empty boundary (a whole component)".into()));
    }
    let mut bfs = BfsScratch::new(g.len());

    // Distances to ∂A: a shortest path from v ∈ A leaves A only at its last
    // vertex, so it lies in the materialized region.
    let mut to_boundary = vec![u32::MAX; g.len()];
    bfs.run(g, bd.as_slice(), u32::MAX, |v, d| {
        to_boundary[v as usize] = d;
        true
    });
    let (center, radius) = set
        .iter()
        .map(|v| (v, to_boundary[v as usize]))
        .fold((u32::MAX, 0), |best, (v, d)| if best.0 == u32::MAX || d > best.1 { (v, d) } else { best });
    if radius == u32::MAX {
        return Err(Error::Disconnected);
    }

    t.require_ball_exact(g, center, 2 * radius)?;
    for u in bd.iter() {
        t.require_ball_exact(g, u, radius)?;
    }

    let mut in_cover = vec![false; g.len()];
    let cover = bfs.ball_members(g, bd.as_slice(), radius);
    for &w in &cover {
        in_cover[w as usize] = true;
    }
    let ball = bfs.ball_members(g, &[center], 2 * radius);
    let ball_covered = ball.iter().all(|&w| in_cover[w as usize]);
    let set_covered = set.iter().all(|v| in_cover[v as usize]);

    let mut violations = pinch_verify(g, t, a, c, 2 * radius, &[(center, Side::LowerOnly)])?.len();
    let upper: Vec<(u32, Side)> = bd.iter().map(|u| (u, Side::UpperOnly)).collect();
    violations += pinch_verify(g, t, a, c, radius, &upper)?.len();

    let nb = bd.len() as f64;
    let ar = a.powi(radius as i32);
    Ok(WarmupReport {
        center: g.id(center).clone(),
        radius,
        set_size: set.len(),
        boundary_size: bd.len(),
        ball_size: ball.len(),
        cover_size: cover.len(),
        ball_covered,
        set_covered,
        pinch_violations: violations,
        growth_ok: nb >= ar / (c * c),
        volume_ok: nb * c * ar >= set.len() as f64,
        slack: nb * nb * c * c * c / set.len() as f64,
    })
}
