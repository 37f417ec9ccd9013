use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    boundary_unchecked, distance_histogram_unchecked, require_interior, BfsScratch, FiniteGraph,
    MarginMode, Truncation, VertexId, VertexSet,
};
use crate::growth::{pinch_verify, Side};
use crate::numeric::{ceil_log, CompensatedSum};

/// Growth constants `(a, c)` and the explicit constants derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProofConstants {
    pub a: f64,
    pub c: f64,
}

impl ProofConstants {
    pub fn new(a: f64, c: f64) -> Result<Self> {
        if !(a > 1.0 && a.is_finite()) || !(c >= 1.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("need a > 1 and c >= 1 (got a = {a}, c = {c})")));
        }
        Ok(ProofConstants { a, c })
    }

    /// Lower constant: `Z >= κ₁·|A|`.
    pub fn kappa1(&self) -> f64 {
        1.0 / (2.0 * self.c * self.c)
    }

    /// Upper bound on every `Z(u)`: `c·(⌈log_a |A|⌉ + 1) + 1/(a−1)`.
    pub fn beta(&self, set_size: usize) -> f64 {
        self.c * (ceil_log(self.a, set_size as f64) as f64 + 1.0) + 1.0 / (self.a - 1.0)
    }

    /// `R = ⌈log_a(2c|A|)⌉`, the smallest radius with `a^R / c >= 2|A|`.
    pub fn radius(&self, set_size: usize) -> u32 {
        ceil_log(self.a, 2.0 * self.c * set_size as f64)
    }
}

/// Contribution of one boundary vertex `u`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryTerm {
    pub vertex: VertexId,
    /// `m_r = |{v ∈ A : d(v, u) = r}|`.
    pub histogram: BTreeMap<u32, usize>,
    /// `Σ_r m_r·a^{-r}`.
    pub z: f64,
    /// `Σ_{v∈A} a^{-d(v,u)}`, with distances measured from the `A` side.
    pub z_direct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub constants: ProofConstants,
    pub radius: u32,
    pub set_size: usize,
    pub boundary_size: usize,
    /// `Σ_u Z(u)` over the histogram route.
    pub z: f64,
    /// The double sum `Σ_{v∈A} Σ_{u∈∂A} a^{-d(v,u)}`.
    pub z_direct: f64,
    /// One term per boundary vertex, in index order.
    pub terms: Vec<BoundaryTerm>,
    pub kappa1: f64,
    pub beta: f64,
}

impl Certificate {
    pub fn max_z_u(&self) -> f64 {
        self.terms.iter().map(|t| t.z).fold(0.0, f64::max)
    }
}

/// Builds the Z-certificate for `A`.
///
/// Every truncated distance `d(v, u)` with `v ∈ A`, `u ∈ ∂A` must be certified
/// exact by `dist(o, v) + dist(o, u) + d(v, u) <= 2·R_t`: every vertex of a true
/// geodesic is then within `R_t` of the roots, hence materialized. The `3·s`
/// rule implies this. The lower pinch is verified at every `v ∈ A` up to
/// radius `R` and the upper pinch at every `u ∈ ∂A` up to `R − 1`, which are
/// the only ball estimates the two bounds use.
pub fn z_certificate(g: &FiniteGraph, t: &Truncation, set: &VertexSet, a: f64, c: f64) -> Result<Certificate> {
    let k = ProofConstants::new(a, c)?;
    require_interior(g, t, set, MarginMode::Boundary)?;
    let radius = k.radius(set.len());
    let bd = boundary_unchecked(g, set);
    let rows = distance_rows(g, set, &bd)?;
    if !t.is_complete() {
        for (v, row) in set.iter().zip(&rows) {
            for (u, &d) in bd.iter().zip(row) {
                if t.dist(v) as u64 + t.dist(u) as u64 + d as u64 > 2 * t.radius() as u64 {
                    return Err(Error::Margin(format!(
                        "distance {d} from {} to {} is not certified exact with R_t = {}",
                        g.id(v),
                        g.id(u),
                        t.radius()
                    )));
                }
            }
        }
    }
    if !set.is_empty() {
        let lower: Vec<(u32, Side)> = set.iter().map(|v| (v, Side::LowerOnly)).collect();
        let upper: Vec<(u32, Side)> = bd.iter().map(|u| (u, Side::UpperOnly)).collect();
        let mut violations = pinch_verify(g, t, a, c, radius, &lower)?;
        violations.extend(pinch_verify(g, t, a, c, radius.saturating_sub(1), &upper)?);
        if let Some(first) = violations.first() {
            return Err(Error::UnverifiedPinch { violations: violations.len(), first: first.to_string() });
        }
    }

    let histograms: Vec<BTreeMap<u32, usize>> = bd
        .as_slice()
        .par_iter()
        .map_init(|| BfsScratch::new(g.len()), |bfs, &u| distance_histogram_unchecked(g, bfs, set, u))
        .collect::<Result<_>>()?;

    let mut terms = Vec::with_capacity(bd.len());
    let mut z_total = CompensatedSum::new();
    let mut direct_total = CompensatedSum::new();
    for (j, (u, histogram)) in bd.iter().zip(histograms).enumerate() {
        let z: f64 = histogram.iter().map(|(&r, &m)| m as f64 * a.powi(-(r as i32))).collect::<CompensatedSum>().value();
        let z_direct: f64 = rows.iter().map(|row| a.powi(-(row[j] as i32))).collect::<CompensatedSum>().value();
        z_total.add(z);
        direct_total.add(z_direct);
        terms.push(BoundaryTerm { vertex: g.id(u).clone(), histogram, z, z_direct });
    }
    Ok(Certificate {
        constants: k,
        radius,
        set_size: set.len(),
        boundary_size: bd.len(),
        z: z_total.value(),
        z_direct: direct_total.value(),
        terms,
        kappa1: k.kappa1(),
        beta: k.beta(set.len()),
    })
}

/// `d(v, u)` for each `v ∈ A` (rows, index order) and `u ∈ ∂A` (columns).
fn distance_rows(g: &FiniteGraph, set: &VertexSet, bd: &VertexSet) -> Result<Vec<Vec<u32>>> {
    set.as_slice()
        .par_iter()
        .map_init(
            || BfsScratch::new(g.len()),
            |bfs, &v| {
                let mut row = vec![u32::MAX; bd.len()];
                let mut found = 0;
                bfs.run(g, &[v], u32::MAX, |w, d| {
                    if let Ok(j) = bd.as_slice().binary_search(&w) {
                        row[j] = d;
                        found += 1;
                    }
                    found < bd.len()
                });
                if found < bd.len() {
                    return Err(Error::Disconnected);
                }
                Ok(row)
            },
        )
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsCheck {
    /// `Z >= κ₁·|A|`.
    pub lower_ok: bool,
    /// `max_u Z(u) <= β`.
    pub upper_ok: bool,
    pub kappa_size: f64,
    pub beta: f64,
    pub max_z_u: f64,
    /// `Z − κ₁·|A|`.
    pub lower_slack: f64,
    /// `β − max_u Z(u)`.
    pub upper_slack: f64,
    /// `Z / max_u Z(u)`, a lower bound on `|∂A|`; zero when `∂A` is empty.
    pub boundary_lower: f64,
    /// `κ₁·|A| / β`, implied by the two bounds together.
    pub implied_lower: f64,
}

/// Evaluates both certificate bounds under `constants`, which need not be
/// the constants the certificate was verified with.
pub fn certificate_bounds_check(cert: &Certificate, constants: &ProofConstants) -> BoundsCheck {
    let kappa_size = constants.kappa1() * cert.set_size as f64;
    let beta = constants.beta(cert.set_size);
    let max_z_u = cert.max_z_u();
    BoundsCheck {
        lower_ok: cert.z >= kappa_size,
        upper_ok: max_z_u <= beta,
        kappa_size,
        beta,
        max_z_u,
        lower_slack: cert.z - kappa_size,
        upper_slack: beta - max_z_u,
        boundary_lower: if max_z_u > 0.0 { cert.z / max_z_u } else { 0.0 },
        implied_lower: kappa_size / beta,
    }
}
