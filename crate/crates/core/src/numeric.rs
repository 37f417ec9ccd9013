//! Small numeric helpers shared by the fitting and certificate code.

/// Neumaier's variant of compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Ordinary least squares with intercept; returns `(slope, intercept)`.
/// `None` when fewer than two points or all x are equal.
pub fn least_squares(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mean_x = compensated_sum(points.iter().map(|p| p.0)) / n;
    let mean_y = compensated_sum(points.iter().map(|p| p.1)) / n;
    let sxx = compensated_sum(points.iter().map(|p| (p.0 - mean_x).powi(2)));
    let sxy = compensated_sum(points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)));
    if sxx <= 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, mean_y - slope * mean_x))
}

/// Smallest integer `k >= 0` with `base^k >= x`, for `base > 1`.
///
/// Computed by repeated multiplication so exact powers (e.g. `2^6 = 64`) are
/// not pushed over by rounding in `ln(x)/ln(base)`.
pub fn ceil_log(base: f64, x: f64) -> u32 {
    debug_assert!(base > 1.0);
    let mut k = 0u32;
    let mut p = 1.0f64;
    while p < x {
        p *= base;
        k += 1;
    }
    k
}
