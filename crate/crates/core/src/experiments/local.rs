use serde::Serialize;

use crate::error::{invalid, Result};
use crate::local_events::{check_eta, detect_a_k_for_each, evaluate_box, BoxOutcome, BoxSpec};
use crate::point_process::Point;

use super::runner::run_trials;
use super::stats::{wilson_interval, EstimateResult};

/// Rates of the local events over box samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalEventRate {
    /// `P(A_k)`.
    pub a_k: EstimateResult,
    /// `P(A_{k,Q} for some tile Q)`.
    pub any_dense: EstimateResult,
    /// `P(some A_{k,Q} | A_k)`, over the trials where `A_k` held.
    pub dense_given_a_k: EstimateResult,
    pub rows: Vec<BoxOutcome>,
}

/// Samples the box `U_n` `trials` times and evaluates `A_k` and its
/// dense-tile refinements with an `N`-tiling and excess `eta`.
pub fn local_event_rate(
    n: f64,
    k: usize,
    m: u32,
    n_tiles: u64,
    eta: f64,
    trials: u64,
    seed: u64,
) -> Result<LocalEventRate> {
    check_eta(eta)?;
    if k == 0 || trials == 0 {
        return Err(invalid("k and trials must be >= 1"));
    }
    let spec = BoxSpec::new(n, m, Point::new(0.0, 0.0))?;
    let start = std::time::Instant::now();
    let rows = run_trials(trials, seed, |_, s| {
        let ps = spec.sample(s)?;
        evaluate_box(&ps, &spec, k, n_tiles, eta)
    })?;
    let hits = rows.iter().filter(|r| r.a_k).count() as u64;
    let dense = rows.iter().filter(|r| r.dense_tile_count > 0).count() as u64;
    let elapsed = start.elapsed().as_secs_f64();
    let mut a_k = EstimateResult::new(hits, trials, seed);
    a_k.wall_time_s = elapsed;
    let mut any_dense = EstimateResult::new(dense, trials, seed);
    any_dense.wall_time_s = elapsed;
    let mut dense_given_a_k = EstimateResult::new(dense, hits, seed);
    dense_given_a_k.wall_time_s = elapsed;
    Ok(LocalEventRate { a_k, any_dense, dense_given_a_k, rows })
}

/// One row of [`ratio_decay`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRow {
    pub k: usize,
    pub l: usize,
    pub trials: u64,
    pub count_k: u64,
    pub count_k_plus_l: u64,
    /// `count_k_plus_l / count_k`; `None` when `A_k` never occurred.
    pub ratio: Option<f64>,
    /// Wilson interval of the ratio, read as the proportion of `A_k`
    /// samples in which `A_{k+L}` also holds.
    pub ci_lo: Option<f64>,
    pub ci_hi: Option<f64>,
}

/// Estimates `P(A_{k+L}) / P(A_k)` for each `L` from one set of box
/// samples, each evaluated at every `k + L`. Since `A_{k+L}` implies `A_k`
/// sample by sample, the ratio is the conditional frequency of `A_{k+L}`
/// given `A_k`.
pub fn ratio_decay(n: f64, k: usize, ls: &[usize], m: u32, trials: u64, seed: u64) -> Result<Vec<RatioRow>> {
    if k == 0 || trials == 0 {
        return Err(invalid("k and trials must be >= 1"));
    }
    let spec = BoxSpec::new(n, m, Point::new(0.0, 0.0))?;
    let mut ks: Vec<usize> = vec![k];
    ks.extend(ls.iter().map(|&l| k + l));
    let flags = run_trials(trials, seed, |_, s| detect_a_k_for_each(&spec.sample(s)?, &ks))?;
    let count_k = flags.iter().filter(|f| f[0]).count() as u64;
    Ok(ls
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let count_k_plus_l = flags.iter().filter(|f| f[i + 1]).count() as u64;
            let (ratio, ci_lo, ci_hi) = if count_k == 0 {
                (None, None, None)
            } else {
                let (lo, hi) = wilson_interval(count_k_plus_l, count_k);
                (Some(count_k_plus_l as f64 / count_k as f64), Some(lo), Some(hi))
            };
            RatioRow { k, l, trials, count_k, count_k_plus_l, ratio, ci_lo, ci_hi }
        })
        .collect())
}
