use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph_analysis::is_s_connected;
use crate::knn_graph::KnnTable;

use super::runner::{run_trials, sample_global};
use super::stats::EstimateResult;
use super::threshold::{check_n, sample_threshold_k_s};

/// Per-sample thresholds `K_1 <= K_2 <= ... <= K_s`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SThresholdTrial {
    pub trial: u64,
    pub points: usize,
    /// `k_s[j]` is `K_{j+1}`; `None` once `m <= j + 1`.
    pub k_s: Vec<Option<usize>>,
}

/// Result of [`s_connectivity_experiment`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SConnectivity {
    pub k: usize,
    pub s: usize,
    pub estimate: EstimateResult,
    /// Filled in coupled mode.
    pub thresholds: Vec<SThresholdTrial>,
}

/// All of `K_1, ..., K_s` for one sample, each search starting at the
/// previous threshold.
pub fn thresholds_up_to(ps: &crate::point_process::PointSet, s: usize) -> Result<Vec<Option<usize>>> {
    let mut out = Vec::with_capacity(s);
    let mut lower = 1;
    for j in 1..=s {
        let k = match out.last() {
            Some(None) => None,
            _ => sample_threshold_k_s(ps, j, lower)?,
        };
        if let Some(k) = k {
            lower = k;
        }
        out.push(k);
    }
    Ok(out)
}

/// Estimates `P(S_{n, k_base + delta_k} is s-connected)`. In coupled mode
/// every sample also reports its thresholds `K_1..K_s`.
pub fn s_connectivity_experiment(
    n: f64,
    k_base: usize,
    s: usize,
    delta_k: usize,
    trials: u64,
    seed: u64,
    coupled: bool,
) -> Result<SConnectivity> {
    check_n(n)?;
    if s == 0 || k_base == 0 || trials == 0 {
        return Err(invalid("s, k and trials must be >= 1"));
    }
    let k = k_base + delta_k;
    let start = std::time::Instant::now();
    let outcomes = run_trials(trials, seed, |trial, sd| {
        let g = sample_global(n, sd)?;
        let table = KnnTable::build(&g.points, k)?;
        let ok = is_s_connected(&table.undirected(k), s);
        let thresholds = if coupled {
            Some(SThresholdTrial { trial, points: g.points.len(), k_s: thresholds_up_to(&g.points, s)? })
        } else {
            None
        };
        Ok((ok, g.degenerate, thresholds))
    })?;
    let mut estimate = EstimateResult::new(outcomes.iter().filter(|o| o.0).count() as u64, trials, seed);
    estimate.degenerate = outcomes.iter().map(|o| o.1).sum();
    estimate.wall_time_s = start.elapsed().as_secs_f64();
    let thresholds = outcomes.into_iter().filter_map(|o| o.2).collect();
    Ok(SConnectivity { k, s, estimate, thresholds })
}
