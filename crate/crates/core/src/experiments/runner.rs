use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::point_process::{sample_poisson, PointSet, Region};
use crate::rng::substream_seed;

/// Environment variable giving the default worker count.
pub const THREADS_ENV: &str = "KNNRGG_THREADS";

/// Runs `f` on a pool of `threads` workers (`None`: the environment
/// variable, else all cores).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let threads = match threads {
        Some(t) => Some(t),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| invalid(format!("{THREADS_ENV}={v} is not a count")))?),
            Err(_) => None,
        },
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(invalid("thread count must be >= 1"));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| invalid(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Seed of trial `t` of a campaign with master seed `master`.
pub fn trial_seed(master: u64, t: u64) -> u64 {
    substream_seed(master, t)
}

/// Evaluates `f(trial, trial_seed)` for every trial in parallel and returns
/// the results in trial order.
pub fn run_trials<T, F>(trials: u64, master: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64) -> Result<T> + Sync,
{
    (0..trials).into_par_iter().map(|t| f(t, trial_seed(master, t))).collect()
}

/// A Poisson sample of `S_n` with at least two points.
#[derive(Clone, Debug)]
pub struct GlobalSample {
    pub points: PointSet,
    /// Samples with fewer than two points drawn (and discarded) first.
    pub degenerate: u64,
}

/// Unit-intensity Poisson sample of `[0, sqrt(n)]^2`, resampled from
/// substreams `1, 2, ...` of `seed` while it has fewer than two points.
pub fn sample_global(n: f64, seed: u64) -> Result<GlobalSample> {
    let region = Region::square_of_area(n)?;
    let mut points = sample_poisson(region, 1.0, seed)?;
    let mut degenerate = 0;
    while points.len() < 2 {
        degenerate += 1;
        if degenerate > 10_000 {
            return Err(invalid(format!("n = {n} is too small: samples keep having fewer than two points")));
        }
        points = sample_poisson(region, 1.0, substream_seed(seed, degenerate))?;
    }
    Ok(GlobalSample { points, degenerate })
}
