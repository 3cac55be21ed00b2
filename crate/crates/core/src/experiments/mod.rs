//! Seeded Monte Carlo campaigns.
//!
//! Trial `t` of a campaign with master seed `s` samples from its own seed
//! `substream_seed(s, t)` and trials run in parallel with results collected
//! in trial order, so every output is identical for any thread count.
//! Global samples are unit-intensity Poisson processes on `[0, sqrt(n)]^2`;
//! samples with fewer than two points are redrawn and counted as
//! degenerate.
//!
//! Connectivity campaigns compute the per-sample threshold `K(P)`, the
//! least `k` with a connected k-NN graph. Edge sets grow with `k`, so the
//! graph is connected at `k` exactly when `k >= K(P)`, and one threshold
//! per sample answers every `k` at once.

mod constants;
mod gilbert;
mod local;
mod output;
mod runner;
mod sconn;
mod stats;
mod threshold;

pub use constants::{paper_constants, PaperConstants};
pub use gilbert::{connectivity_radius, gilbert_penrose_compare, no_isolated_radius, GilbertComparison, GilbertTrial};
pub use local::{local_event_rate, ratio_decay, LocalEventRate, RatioRow};
pub use output::*;
pub use runner::{run_trials, sample_global, trial_seed, with_threads, GlobalSample, THREADS_ENV};
pub use sconn::{s_connectivity_experiment, thresholds_up_to, SConnectivity, SThresholdTrial};
pub use stats::{ecdf, empirical_quantile, wilson_interval, EstimateResult, Z_95};
pub use threshold::{
    connected_at, estimate_connectivity, estimate_threshold_constant, sample_threshold_k, sample_threshold_k_s,
    sharpness_from, sharpness_width, sweep, sweep_rows, threshold_estimate, threshold_samples, Sharpness, SweepRow,
    ThresholdEstimate, ThresholdTrial,
};
