use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph_analysis::{is_s_connected, UnionFind};
use crate::knn_graph::KnnTable;
use crate::point_process::PointSet;

use super::runner::{run_trials, sample_global};
use super::stats::{ecdf, empirical_quantile, wilson_interval, EstimateResult};

/// Whether the k-NN graph from `table` is connected, by union-find over
/// the first `k` entries of each neighbour list.
pub fn connected_at(table: &KnnTable<'_>, k: usize) -> bool {
    let m = table.points().len();
    if m <= 1 {
        return true;
    }
    let mut uf = UnionFind::new(m);
    for u in 0..m {
        let list = table.neighbors(u);
        for &v in &list[..k.min(list.len())] {
            if uf.union(u, v) && uf.set_count() == 1 {
                return true;
            }
        }
    }
    uf.set_count() == 1
}

fn initial_cap(m: usize) -> usize {
    ((m as f64).ln().ceil() as usize).max(4).min(m - 1)
}

/// Smallest `k` with a monotone property of the k-NN graph, searching
/// `[lo, m - 1]`: the table grows by doubling until the property holds,
/// then bisection locates the first `k`.
fn first_k(ps: &PointSet, lo: usize, holds: impl Fn(&KnnTable<'_>, usize) -> bool) -> Result<usize> {
    let m = ps.len();
    let mut lo = lo.max(1);
    let mut cap = initial_cap(m).max(lo).min(m - 1);
    loop {
        let table = KnnTable::build(ps, cap)?;
        if holds(&table, cap) {
            let mut hi = cap;
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if holds(&table, mid) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            return Ok(hi);
        }
        if cap == m - 1 {
            return Err(invalid("property fails even for the complete graph"));
        }
        lo = cap + 1;
        cap = (2 * cap).min(m - 1);
    }
}

/// `K(P)`: the least `k` for which the k-NN graph on `ps` is connected.
pub fn sample_threshold_k(ps: &PointSet) -> Result<usize> {
    if ps.len() < 2 {
        return Err(invalid(format!("threshold needs at least two points, got {}", ps.len())));
    }
    first_k(ps, 1, connected_at)
}

/// `K_s(P)`: the least `k` for which the k-NN graph is `s`-connected,
/// searching from `lower` (any known lower bound such as `K_{s-1}`).
/// `None` when `m <= s`.
pub fn sample_threshold_k_s(ps: &PointSet, s: usize, lower: usize) -> Result<Option<usize>> {
    if s == 0 {
        return Err(invalid("s must be >= 1"));
    }
    if ps.len() <= s {
        return Ok(None);
    }
    if s == 1 {
        return sample_threshold_k(ps).map(Some);
    }
    first_k(ps, lower, |t, k| is_s_connected(&t.undirected(k), s)).map(Some)
}

/// Per-trial thresholds of a campaign on `S_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdTrial {
    pub trial: u64,
    pub seed: u64,
    pub points: usize,
    pub degenerate: u64,
    pub threshold: usize,
}

/// `K(P_t)` for `trials` independent samples of `S_n`.
pub fn threshold_samples(n: f64, trials: u64, seed: u64) -> Result<Vec<ThresholdTrial>> {
    check_n(n)?;
    run_trials(trials, seed, |trial, s| {
        let g = sample_global(n, s)?;
        Ok(ThresholdTrial {
            trial,
            seed: s,
            points: g.points.len(),
            degenerate: g.degenerate,
            threshold: sample_threshold_k(&g.points)?,
        })
    })
}

pub(crate) fn check_n(n: f64) -> Result<()> {
    if n.is_finite() && n > 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("n must be finite and > 1, got {n}")))
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        Err(invalid("trials must be >= 1"))
    } else {
        Ok(())
    }
}

/// Fraction of samples of `S_n` whose k-NN graph is connected.
pub fn estimate_connectivity(n: f64, k: usize, trials: u64, seed: u64) -> Result<EstimateResult> {
    if k == 0 {
        return Err(invalid("k must be >= 1"));
    }
    check_trials(trials)?;
    check_n(n)?;
    let start = std::time::Instant::now();
    let outcomes = run_trials(trials, seed, |_, s| {
        let g = sample_global(n, s)?;
        let table = KnnTable::build(&g.points, k)?;
        Ok((connected_at(&table, k), g.degenerate))
    })?;
    let mut est = EstimateResult::new(outcomes.iter().filter(|o| o.0).count() as u64, trials, seed);
    est.degenerate = outcomes.iter().map(|o| o.1).sum();
    est.wall_time_s = start.elapsed().as_secs_f64();
    Ok(est)
}

/// One row of a connectivity sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: f64,
    pub k: usize,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Connectivity probability for each `k` in `ks` from one set of samples:
/// sample `t` is connected at `k` exactly when `k >= K(P_t)`.
pub fn sweep(n: f64, ks: &[usize], trials: u64, seed: u64) -> Result<Vec<SweepRow>> {
    if ks.contains(&0) {
        return Err(invalid("k must be >= 1"));
    }
    check_trials(trials)?;
    let samples = threshold_samples(n, trials, seed)?;
    Ok(sweep_rows(n, ks, &samples))
}

pub fn sweep_rows(n: f64, ks: &[usize], samples: &[ThresholdTrial]) -> Vec<SweepRow> {
    let trials = samples.len() as u64;
    ks.iter()
        .map(|&k| {
            let successes = samples.iter().filter(|s| k >= s.threshold).count() as u64;
            let (ci_lo, ci_hi) = wilson_interval(successes, trials);
            SweepRow { n, k, trials, successes, p_hat: successes as f64 / trials as f64, ci_lo, ci_hi }
        })
        .collect()
}

/// The empirical threshold distribution and its `q`-quantile.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdEstimate {
    pub n: f64,
    pub log_n: f64,
    pub q: f64,
    pub k_q: usize,
    /// `k_q / log n`.
    pub c_hat: f64,
    /// `(k, count, F(k))` over observed thresholds.
    pub cdf: Vec<(usize, u64, f64)>,
    pub samples: Vec<ThresholdTrial>,
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("quantile must lie in (0, 1), got {q}")))
    }
}

pub fn estimate_threshold_constant(n: f64, trials: u64, q: f64, seed: u64) -> Result<ThresholdEstimate> {
    check_q(q)?;
    check_trials(trials)?;
    let samples = threshold_samples(n, trials, seed)?;
    Ok(threshold_estimate(n, q, samples))
}

pub fn threshold_estimate(n: f64, q: f64, samples: Vec<ThresholdTrial>) -> ThresholdEstimate {
    let ks: Vec<usize> = samples.iter().map(|s| s.threshold).collect();
    let k_q = empirical_quantile(&ks, q);
    ThresholdEstimate { n, log_n: n.ln(), q, k_q, c_hat: k_q as f64 / n.ln(), cdf: ecdf(&ks), samples }
}

/// Width of the window over which connectivity goes from `eps` to `1 - eps`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sharpness {
    pub n: f64,
    pub eps: f64,
    pub trials: u64,
    pub k_eps: usize,
    pub k_one_minus_eps: usize,
    pub width: usize,
    pub log_inv_eps: f64,
}

pub fn sharpness_width(n: f64, eps: f64, trials: u64, seed: u64) -> Result<Sharpness> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(invalid(format!("eps must lie in (0, 1/2], got {eps}")));
    }
    check_trials(trials)?;
    let samples = threshold_samples(n, trials, seed)?;
    Ok(sharpness_from(n, eps, &samples))
}

pub fn sharpness_from(n: f64, eps: f64, samples: &[ThresholdTrial]) -> Sharpness {
    let ks: Vec<usize> = samples.iter().map(|s| s.threshold).collect();
    let k_eps = empirical_quantile(&ks, eps);
    let k_one_minus_eps = empirical_quantile(&ks, 1.0 - eps);
    Sharpness {
        n,
        eps,
        trials: samples.len() as u64,
        k_eps,
        k_one_minus_eps,
        width: k_one_minus_eps - k_eps,
        log_inv_eps: (1.0 / eps).ln(),
    }
}
