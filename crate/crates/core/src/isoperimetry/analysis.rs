use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{boundary, BfsScratch, FiniteGraph, Truncation, VertexSet};
use crate::growth::phi;
use crate::numeric::least_squares;

/// A set, its vertex boundary, and the best constant for `|∂A| >= C·|A|/ln(2+|A|)`
/// on this set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SetAnalysis {
    pub set: VertexSet,
    pub boundary: VertexSet,
    pub size: usize,
    pub boundary_size: usize,
    /// `|∂A|·ln(2+|A|)/|A|`; `None` for the empty set.
    pub eii_ratio: Option<f64>,
}

pub fn eii_ratio(size: usize, boundary_size: usize) -> Option<f64> {
    (size > 0).then(|| boundary_size as f64 * (2.0 + size as f64).ln() / size as f64)
}

pub fn analyze_set(g: &FiniteGraph, t: &Truncation, set: &VertexSet) -> Result<SetAnalysis> {
    let b = boundary(g, t, set)?;
    Ok(SetAnalysis {
        size: set.len(),
        boundary_size: b.len(),
        eii_ratio: eii_ratio(set.len(), b.len()),
        set: set.clone(),
        boundary: b,
    })
}

/// `|A| / (4·m·phi(2|A|))`, with `phi` anchored at the truncation root.
pub fn cs_bound(g: &FiniteGraph, t: &Truncation, set: &VertexSet, degree: usize) -> Result<f64> {
    if degree == 0 {
        return Err(Error::InvalidParameter("degree m must be >= 1".into()));
    }
    if !set.is_valid_for(g) {
        return Err(Error::InvalidParameter("vertex set index out of range".into()));
    }
    if set.is_empty() {
        return Ok(0.0);
    }
    let r = phi(g, t, t.root(), 2 * set.len())?;
    Ok(set.len() as f64 / (4.0 * degree as f64 * r as f64))
}

/// Exact diameter by BFS from every vertex.
pub fn diameter(g: &FiniteGraph) -> Result<u32> {
    if g.is_empty() {
        return Ok(0);
    }
    let ecc: Vec<Option<u32>> = (0..g.len() as u32)
        .into_par_iter()
        .map_init(
            || BfsScratch::new(g.len()),
            |bfs, v| {
                let mut seen = 0usize;
                let mut far = 0;
                bfs.run(g, &[v], u32::MAX, |_, d| {
                    seen += 1;
                    far = d;
                    true
                });
                (seen == g.len()).then_some(far)
            },
        )
        .collect();
    ecc.into_iter().try_fold(0, |m, e| e.map(|e| m.max(e)).ok_or(Error::Disconnected))
}

/// `|A| / (1 + diam G)` for a finite connected graph and `0 < |A| < |V|/2`.
pub fn babai_szegedy(g: &FiniteGraph, set: &VertexSet) -> Result<f64> {
    if !set.is_valid_for(g) {
        return Err(Error::InvalidParameter("vertex set index out of range".into()));
    }
    if set.is_empty() || 2 * set.len() >= g.len() {
        return Err(Error::OutOfRange(format!(
            "needs 0 < |A| < |V|/2, got |A| = {} and |V| = {}",
            set.len(),
            g.len()
        )));
    }
    let diam = diameter(g)?;
    Ok(set.len() as f64 / (1.0 + diam as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionFit {
    /// Least-squares slope of `ln|∂A|` against `ln|A|`.
    pub slope: f64,
    /// `1/(1 - slope)`; `None` stands for infinite dimension (slope >= 1).
    pub dimension: Option<f64>,
}

/// Fits `|∂A| ≈ C·|A|^((s-1)/s)` and returns `s`.
pub fn iso_dimension_fit(pairs: &[(usize, usize)]) -> Result<DimensionFit> {
    if pairs.len() < 3 {
        return Err(Error::DegenerateFit("need at least three (|A|, |∂A|) pairs".into()));
    }
    let mut sizes: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() != pairs.len() {
        return Err(Error::DegenerateFit("|A| values must be distinct".into()));
    }
    if pairs.iter().any(|&(a, b)| a == 0 || b == 0) {
        return Err(Error::DegenerateFit("sizes and boundary sizes must be positive".into()));
    }
    let pts: Vec<(f64, f64)> = pairs.iter().map(|&(a, b)| ((a as f64).ln(), (b as f64).ln())).collect();
    let (slope, _) = least_squares(&pts).ok_or_else(|| Error::DegenerateFit("singular design".into()))?;
    Ok(DimensionFit { slope, dimension: (slope < 1.0).then(|| 1.0 / (1.0 - slope)) })
}

/// Largest set size `⌊a^R / (2c)⌋` for which balls of radius up to `R`
/// suffice to run the certificate.
pub fn finite_applicability(a: f64, c: f64, radius: u32) -> Result<u64> {
    if !(a > 1.0 && a.is_finite()) || !(c >= 1.0 && c.is_finite()) || radius < 1 {
        return Err(Error::InvalidParameter(format!(
            "need a > 1, c >= 1, R >= 1 (got a = {a}, c = {c}, R = {radius})"
        )));
    }
    Ok((a.powi(radius as i32) / (2.0 * c)).floor() as u64)
}
