use serde::Serialize;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval at 95%:
///
/// `(p + z²/2t ± z sqrt(p(1-p)/t + z²/4t²)) / (1 + z²/t)`
///
/// with `p = successes / trials`. Returns `(0, 1)` for zero trials.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let t = trials as f64;
    let p = successes as f64 / t;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / t;
    let centre = p + z2 / (2.0 * t);
    let half = Z_95 * (p * (1.0 - p) / t + z2 / (4.0 * t * t)).sqrt();
    let lo = ((centre - half) / denom).clamp(0.0, p);
    let hi = ((centre + half) / denom).clamp(p, 1.0);
    (lo, hi)
}

/// A Monte Carlo probability estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimateResult {
    pub successes: u64,
    pub trials: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    /// Resampled degenerate trials (fewer than two points).
    pub degenerate: u64,
    pub seed: u64,
    pub wall_time_s: f64,
}

impl EstimateResult {
    pub fn new(successes: u64, trials: u64, seed: u64) -> Self {
        let (ci_lo, ci_hi) = wilson_interval(successes, trials);
        let p_hat = if trials == 0 { 0.0 } else { successes as f64 / trials as f64 };
        Self { successes, trials, p_hat, ci_lo, ci_hi, degenerate: 0, seed, wall_time_s: 0.0 }
    }
}

/// Smallest sample value `x` with empirical CDF `F(x) >= q`.
///
/// # Panics
/// On an empty sample.
pub fn empirical_quantile(values: &[usize], q: f64) -> usize {
    assert!(!values.is_empty(), "quantile of an empty sample");
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let t = sorted.len();
    let rank = ((q * t as f64).ceil() as usize).clamp(1, t);
    sorted[rank - 1]
}

/// Empirical CDF as `(value, count, F(value))` rows over distinct values.
pub fn ecdf(values: &[usize]) -> Vec<(usize, u64, f64)> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let t = sorted.len() as f64;
    let mut rows: Vec<(usize, u64, f64)> = Vec::new();
    for (i, &v) in sorted.iter().enumerate() {
        let f = (i + 1) as f64 / t;
        match rows.last_mut() {
            Some(row) if row.0 == v => {
                row.1 += 1;
                row.2 = f;
            }
            _ => rows.push((v, 1, f)),
        }
    }
    rows
}
