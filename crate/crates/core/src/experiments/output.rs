use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::point_process::fmt_real;

use super::constants::PaperConstants;
use super::gilbert::GilbertComparison;
use super::local::RatioRow;
use super::sconn::SConnectivity;
use super::stats::EstimateResult;
use super::threshold::{Sharpness, SweepRow, ThresholdEstimate};

/// Writes `contents` to a sibling temporary file, then renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn opt_real(v: Option<f64>) -> String {
    v.map(fmt_real).unwrap_or_else(|| "na".into())
}

pub const SWEEP_HEADER: &str = "n,k,trials,successes,p_hat,ci_lo,ci_hi";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = format!("{SWEEP_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            fmt_real(r.n),
            r.k,
            r.trials,
            r.successes,
            fmt_real(r.p_hat),
            fmt_real(r.ci_lo),
            fmt_real(r.ci_hi)
        );
    }
    s
}

pub const ESTIMATE_HEADER: &str = "n,k,trials,successes,p_hat,ci_lo,ci_hi,degenerate";

pub fn estimate_csv(n: f64, k: usize, e: &EstimateResult) -> String {
    format!(
        "{ESTIMATE_HEADER}\n{},{k},{},{},{},{},{},{}\n",
        fmt_real(n),
        e.trials,
        e.successes,
        fmt_real(e.p_hat),
        fmt_real(e.ci_lo),
        fmt_real(e.ci_hi),
        e.degenerate
    )
}

pub const THRESHOLD_HEADER: &str = "trial,seed,points,degenerate,K";

/// Per-trial thresholds followed by nothing else; see [`cdf_csv`] for the CDF.
pub fn threshold_csv(est: &ThresholdEstimate) -> String {
    let mut s = format!("{THRESHOLD_HEADER}\n");
    for t in &est.samples {
        let _ = writeln!(s, "{},{},{},{},{}", t.trial, t.seed, t.points, t.degenerate, t.threshold);
    }
    s
}

pub const CDF_HEADER: &str = "k,count,cdf";

pub fn cdf_csv(est: &ThresholdEstimate) -> String {
    let mut s = format!("{CDF_HEADER}\n");
    for &(k, c, f) in &est.cdf {
        let _ = writeln!(s, "{k},{c},{}", fmt_real(f));
    }
    s
}

pub const SHARPNESS_HEADER: &str = "n,eps,trials,k_eps,k_one_minus_eps,width,log_inv_eps";

pub fn sharpness_csv(rows: &[Sharpness]) -> String {
    let mut s = format!("{SHARPNESS_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            fmt_real(r.n),
            fmt_real(r.eps),
            r.trials,
            r.k_eps,
            r.k_one_minus_eps,
            r.width,
            fmt_real(r.log_inv_eps)
        );
    }
    s
}

pub const RATIO_HEADER: &str = "k,L,trials,count_k,count_k_plus_L,ratio,ci_lo,ci_hi";

pub fn ratio_csv(rows: &[RatioRow]) -> String {
    let mut s = format!("{RATIO_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.k,
            r.l,
            r.trials,
            r.count_k,
            r.count_k_plus_l,
            opt_real(r.ratio),
            opt_real(r.ci_lo),
            opt_real(r.ci_hi)
        );
    }
    s
}

/// Summary row of an s-connectivity run.
pub fn s_connectivity_csv(n: f64, r: &SConnectivity) -> String {
    let e = &r.estimate;
    format!(
        "n,k,s,trials,successes,p_hat,ci_lo,ci_hi,degenerate\n{},{},{},{},{},{},{},{},{}\n",
        fmt_real(n),
        r.k,
        r.s,
        e.trials,
        e.successes,
        fmt_real(e.p_hat),
        fmt_real(e.ci_lo),
        fmt_real(e.ci_hi),
        e.degenerate
    )
}

/// Per-trial thresholds `K_1..K_s` of a coupled s-connectivity run.
pub fn s_thresholds_csv(r: &SConnectivity) -> String {
    let mut s = String::from("trial,points");
    for j in 1..=r.s {
        let _ = write!(s, ",K_{j}");
    }
    s.push('\n');
    for t in &r.thresholds {
        let _ = write!(s, "{},{}", t.trial, t.points);
        for k in &t.k_s {
            match k {
                Some(k) => {
                    let _ = write!(s, ",{k}");
                }
                None => s.push_str(",na"),
            }
        }
        s.push('\n');
    }
    s
}

pub const GILBERT_HEADER: &str = "trial,points,degenerate,r_connect,r_no_isolated,equal";

pub fn gilbert_csv(c: &GilbertComparison) -> String {
    let mut s = format!("{GILBERT_HEADER}\n");
    for t in &c.trials {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            t.trial,
            t.points,
            t.degenerate,
            fmt_real(t.r_connect),
            fmt_real(t.r_no_isolated),
            t.coincide()
        );
    }
    s
}

pub fn constants_text(k: &PaperConstants) -> String {
    let mut s = format!("M = {}\nN = {}\neta = {}\nL = {}\nC = {}\n", k.m, k.n_tiles, k.eta, k.l, fmt_real(k.c));
    if let Some((n, sv, inc)) = k.s_increment {
        let _ = writeln!(s, "floor(2 C s log log n) = {inc}  (n = {n}, s = {sv})");
    }
    s
}

/// Record of one campaign, written after it completes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// The merged configuration; feeding it back via `--config` repeats the run.
    pub config: serde_json::Value,
    pub master_seed: Option<u64>,
    pub version: String,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub wall_time_s: f64,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, &(serde_json::to_string_pretty(self)? + "\n"))
    }
}

pub fn unix_ms() -> u128 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}
