//! Command-line front end.
//!
//! Every subcommand flag has a JSON equivalent: the key is the long flag
//! name (`n`, `k`, `trials`, `seed`, `M`, `N`, `eta`, `delta-k`, ...).
//! `--config FILE` loads such an object (or a run manifest, whose `config`
//! member is used) and flags given on the command line override it. The
//! merged configuration is echoed into the run manifest.
//!
//! Exit codes: 0 on success, 1 for usage or configuration errors, 2 for
//! failures while running (including selfcheck violations).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{invalid, Error, Result};
use crate::experiments::{self as ex, RunManifest};
use crate::local_events::{event_report_row, DEFAULT_ETA, DEFAULT_M, DEFAULT_N, EVENT_REPORT_HEADER};
use crate::point_process::{sample_fixed, sample_poisson, Region};

/// Paper band for the critical constant, printed next to threshold estimates.
pub const C_STAR_BAND: (f64, f64) = (0.3043, 0.513_898_561_635_006_5);

#[derive(Parser, Debug)]
#[command(name = "knnrgg", version, about = "k-NN and Gilbert random geometric graph experiments")]
pub struct Cli {
    /// JSON configuration file; command-line flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a Poisson (or fixed-count) point set of S_n and write it as CSV.
    Sample(SampleOpts),
    /// Connectivity probability of S_{n,k} over a range of k.
    Sweep(SweepOpts),
    /// Per-sample connectivity thresholds K and their quantile.
    Threshold(ThresholdOpts),
    /// Width k_{1-eps} - k_eps of the connectivity window.
    Sharpness(SharpnessOpts),
    /// Rates of the local events A_k and A_{k,Q} on box samples.
    LocalEvents(LocalOpts),
    /// Ratios P(A_{k+L}) / P(A_k) from coupled box samples.
    RatioDecay(RatioOpts),
    /// Probability that S_{n,k} is s-connected, with per-sample thresholds.
    SConnectivity(SConnOpts),
    /// Connectivity radius versus no-isolated-vertex radius of G_{n,r}.
    GilbertCompare(GilbertOpts),
    /// Explicit constants L, C and the s-connectivity increment.
    Constants(ConstantsOpts),
    /// Run the deterministic property suites.
    Selfcheck(SelfcheckOpts),
}

macro_rules! opts {
    ($(#[$meta:meta])* $name:ident { $($(#[$fmeta:meta])* $field:ident : $ty:ty),* $(,)? }) => {
        $(#[$meta])*
        #[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
        #[serde(deny_unknown_fields, rename_all = "kebab-case")]
        pub struct $name {
            $($(#[$fmeta])* #[serde(skip_serializing_if = "Option::is_none", default)] pub $field: Option<$ty>,)*
            /// Worker threads (default: KNNRGG_THREADS or all cores).
            #[arg(long)]
            #[serde(skip_serializing_if = "Option::is_none", default)]
            pub threads: Option<usize>,
            /// Output file (default: standard output).
            #[arg(long)]
            #[serde(skip_serializing_if = "Option::is_none", default)]
            pub out: Option<PathBuf>,
            /// Run manifest path (default: `<out>.manifest.json` when --out is given).
            #[arg(long)]
            #[serde(skip_serializing_if = "Option::is_none", default)]
            pub manifest: Option<PathBuf>,
        }
    };
}

opts!(SampleOpts {
    /// Area of S_n.
    #[arg(long)] n: f64,
    /// Master seed.
    #[arg(long)] seed: u64,
    /// Fixed point count instead of a Poisson count.
    #[arg(long)] count: usize,
});

opts!(SweepOpts {
    #[arg(long)] n: f64,
    /// k range `lo:hi[:step]` or a single k.
    #[arg(long)] k: String,
    #[arg(long)] trials: u64,
    #[arg(long)] seed: u64,
});

opts!(ThresholdOpts {
    #[arg(long)] n: f64,
    #[arg(long)] trials: u64,
    /// Quantile q in (0, 1).
    #[arg(long)] q: f64,
    #[arg(long)] seed: u64,
    /// Where to write the empirical CDF of K.
    #[arg(long)] cdf_out: PathBuf,
});

opts!(SharpnessOpts {
    #[arg(long)] n: f64,
    /// eps in (0, 1/2].
    #[arg(long)] eps: f64,
    #[arg(long)] trials: u64,
    #[arg(long)] seed: u64,
});

opts!(LocalOpts {
    #[arg(long)] n: f64,
    #[arg(long)] k: usize,
    /// Box scale M.
    #[arg(long = "M")] #[serde(rename = "M")] m: u32,
    /// Tiles per sqrt(log n).
    #[arg(long = "N")] #[serde(rename = "N")] n_tiles: u64,
    #[arg(long)] eta: f64,
    #[arg(long)] trials: u64,
    #[arg(long)] seed: u64,
});

opts!(RatioOpts {
    #[arg(long)] n: f64,
    #[arg(long)] k: usize,
    /// Comma-separated increments L.
    #[arg(long = "L")] #[serde(rename = "L")] l: String,
    #[arg(long = "M")] #[serde(rename = "M")] m: u32,
    #[arg(long)] trials: u64,
    #[arg(long)] seed: u64,
});

opts!(SConnOpts {
    #[arg(long)] n: f64,
    #[arg(long)] k: usize,
    #[arg(long)] s: usize,
    #[arg(long)] delta_k: usize,
    #[arg(long)] trials: u64,
    #[arg(long)] seed: u64,
    /// Also compute per-sample thresholds K_1..K_s.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")] coupled: bool,
    /// Where to write the per-sample thresholds.
    #[arg(long)] thresholds_out: PathBuf,
});

opts!(GilbertOpts {
    #[arg(long)] n: f64,
    #[arg(long)] trials: u64,
    #[arg(long)] seed: u64,
});

opts!(ConstantsOpts {
    #[arg(long = "M")] #[serde(rename = "M")] m: u32,
    #[arg(long = "N")] #[serde(rename = "N")] n_tiles: u64,
    #[arg(long)] eta: f64,
    /// With --s, evaluate floor(2 C s log log n) at this n.
    #[arg(long)] n: f64,
    #[arg(long)] s: usize,
});

opts!(SelfcheckOpts {
    #[arg(long)] seed: u64,
});

/// Overlays the flags given on the command line onto the config file.
fn merge<T: Serialize + DeserializeOwned>(file: Option<&Value>, flags: &T) -> Result<T> {
    let mut merged = match file {
        Some(Value::Object(m)) => m.clone(),
        Some(_) => return Err(Error::Parse("config must be a JSON object".into())),
        None => Map::new(),
    };
    if let Value::Object(f) = serde_json::to_value(flags)? {
        merged.extend(f);
    }
    serde_json::from_value(Value::Object(merged)).map_err(|e| Error::Parse(format!("config: {e}")))
}

fn load_config(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    match v {
        Value::Object(ref m) if m.contains_key("command") && m.contains_key("config") => Ok(m["config"].clone()),
        other => Ok(other),
    }
}

/// Parses `lo:hi[:step]` or a single integer.
pub fn parse_k_range(s: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str| p.trim().parse::<usize>().map_err(|_| invalid(format!("bad k range `{s}`")));
    let (lo, hi, step) = match parts.as_slice() {
        [one] => (num(one)?, num(one)?, 1),
        [a, b] => (num(a)?, num(b)?, 1),
        [a, b, c] => (num(a)?, num(b)?, num(c)?),
        _ => return Err(invalid(format!("bad k range `{s}`"))),
    };
    if lo == 0 || step == 0 || hi < lo {
        return Err(invalid(format!("k range `{s}` needs 1 <= lo <= hi and step >= 1")));
    }
    Ok((lo..=hi).step_by(step).collect())
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| invalid(format!("bad list `{s}`"))))
        .collect()
}

fn need<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| invalid(format!("missing --{name} (flag or config key)")))
}

/// Where outputs go and what the manifest should record.
struct Sink {
    outputs: Vec<String>,
}

impl Sink {
    fn emit(&mut self, path: Option<&PathBuf>, contents: &str) -> Result<()> {
        match path {
            Some(p) => {
                ex::write_atomic(p, contents)?;
                self.outputs.push(p.display().to_string());
            }
            None => print!("{contents}"),
        }
        Ok(())
    }
}

fn manifest_path(out: Option<&PathBuf>, manifest: Option<&PathBuf>) -> Option<PathBuf> {
    manifest.cloned().or_else(|| {
        out.map(|o| {
            let mut s = o.as_os_str().to_owned();
            s.push(".manifest.json");
            PathBuf::from(s)
        })
    })
}

/// A validated command ready to run.
struct Job {
    command: &'static str,
    config: Value,
    seed: Option<u64>,
    threads: Option<usize>,
    manifest: Option<PathBuf>,
    action: Box<dyn FnOnce(&mut Sink) -> Result<()> + Send>,
}

fn job<T: Serialize>(
    command: &'static str,
    opts: &T,
    seed: Option<u64>,
    threads: Option<usize>,
    out: Option<&PathBuf>,
    manifest: Option<&PathBuf>,
    action: impl FnOnce(&mut Sink) -> Result<()> + Send + 'static,
) -> Result<Job> {
    Ok(Job {
        command,
        config: serde_json::to_value(opts)?,
        seed,
        threads,
        manifest: manifest_path(out, manifest),
        action: Box::new(action),
    })
}

fn prepare(command: Command, file: Option<&Value>) -> Result<Job> {
    match command {
        Command::Sample(o) => {
            let o = merge(file, &o)?;
            let n = need(o.n, "n")?;
            let seed = o.seed.unwrap_or(0);
            let region = Region::square_of_area(n)?;
            let (out, count) = (o.out.clone(), o.count);
            job("sample", &o, Some(seed), o.threads, o.out.as_ref(), o.manifest.as_ref(), move |sink| {
                let ps = match count {
                    Some(c) => sample_fixed(region, c, seed)?,
                    None => sample_poisson(region, 1.0, seed)?,
                };
                sink.emit(out.as_ref(), &ps.to_csv_string())
            })
        }
        Command::Sweep(o) => {
            let o = merge(file, &o)?;
            let n = need(o.n, "n")?;
            let ks = parse_k_range(&need(o.k.clone(), "k")?)?;
            let trials = need(o.trials, "trials")?;
            let seed = o.seed.unwrap_or(0);
            check_campaign(n, trials)?;
            let out = o.out.clone();
            job("sweep", &o, Some(seed), o.threads, o.out.as_ref(), o.manifest.as_ref(), move |sink| {
                sink.emit(out.as_ref(), &ex::sweep_csv(&ex::sweep(n, &ks, trials, seed)?))
            })
        }
        Command::Threshold(o) => {
            let o = merge(file, &o)?;
            let n = need(o.n, "n")?;
            let trials = need(o.trials, "trials")?;
            let q = o.q.unwrap_or(0.5);
            let seed = o.seed.unwrap_or(0);
            check_campaign(n, trials)?;
            if !(q > 0.0 && q < 1.0) {
                return Err(invalid("q must lie in (0, 1)"));
            }
            let (out, cdf_out) = (o.out.clone(), o.cdf_out.clone());
            job("threshold", &o, Some(seed), o.threads, o.out.as_ref(), o.manifest.as_ref(), move |sink| {
                let est = ex::estimate_threshold_constant(n, trials, q, seed)?;
                sink.emit(out.as_ref(), &ex::threshold_csv(&est))?;
                if let Some(p) = cdf_out {
                    sink.emit(Some(&p), &ex::cdf_csv(&est))?;
                }
                eprintln!(
                    "n = {n}  log n = {:.6}  k_{q} = {}  c_hat = k_q / log n = {:.6}  (asymptotic band {} < c_* < {:.4})",
                    est.log_n, est.k_q, est.c_hat, C_STAR_BAND.0, C_STAR_BAND.1
                );
                Ok(())
            })
        }
        Command::Sharpness(o) => {
            let o = merge(file, &o)?;
            let n = need(o.n, "n")?;
            let trials = need(o.trials, "trials")?;
            let eps = o.eps.unwrap_or(0.1);
            let seed = o.seed.unwrap_or(0);
            check_campaign(n, trials)?;
            if !(eps > 0.0 && eps <= 0.5) {
                return Err(invalid("eps must lie in (0, 1/2]"));
            }
            let out = o.out.clone();
            job("sharpness", &o, Some(seed), o.threads, o.out.as_ref(), o.manifest.as_ref(), move |sink| {
                sink.emit(out.as_ref(), &ex::sharpness_csv(&[ex::sharpness_width(n, eps, trials, seed)?]))
            })
        }
        Command::LocalEvents(o) => {
            let o = merge(file, &o)?;
            let n = need(o.n, "n")?;
            let k = need(o.k, "k")?;
            let trials = need(o.trials, "trials")?;
            let (m, n_tiles, eta) = (o.m.unwrap_or(DEFAULT_M), o.n_tiles.unwrap_or(DEFAULT_N as u64), o.eta.unwrap_or(DEFAULT_ETA));
            let seed = o.seed.unwrap_or(0);
            check_campaign(n, trials)?;
            crate::local_events::check_eta(eta)?;
            crate::local_events::BoxSpec::new(n, m, crate::point_process::Point::new(0.0, 0.0))?;
            if k == 0 || n_tiles == 0 {
                return Err(invalid("k and N must be >= 1"));
            }
            let out = o.out.clone();
            job("local-events", &o, Some(seed), o.threads, o.out.as_ref(), o.manifest.as_ref(), move |sink| {
                let r = ex::local_event_rate(n, k, m, n_tiles, eta, trials, seed)?;
                let mut csv = format!("{EVENT_REPORT_HEADER}\n");
                for (t, row) in r.rows.iter().enumerate() {
                    csv.push_str(&event_report_row(t as u64, 0, row));
                    csv.push('\n');
                }
                sink.emit(out.as_ref(), &csv)?;
                eprintln!(
                    "P(A_k) = {:.6} [{:.6}, {:.6}]  P(some A_k,Q) = {:.6}  P(some A_k,Q | A_k) = {:.6} over {} A_k samples",
                    r.a_k.p_hat, r.a_k.ci_lo, r.a_k.ci_hi, r.any_dense.p_hat, r.dense_given_a_k.p_hat, r.a_k.successes
                );
                Ok(())
            })
        }
        Command::RatioDecay(o) => {
            let o = merge(file, &o)?;
            let n = need(o.n, "n")?;
            let k = need(o.k, "k")?;
            let ls = parse_list(&o.l.clone().unwrap_or_else(|| "0,1,2,5".into()))?;
            let m = o.m.unwrap_or(DEFAULT_M);
            let trials = need(o.trials, "trials")?;
            let seed = o.seed.unwrap_or(0);
            check_campaign(n, trials)?;
            if k == 0 {
                return Err(invalid("k must be >= 1"));
            }
            let out = o.out.clone();
            job("ratio-decay", &o, Some(seed), o.threads, o.out.as_ref(), o.manifest.as_ref(), move |sink| {
                sink.emit(out.as_ref(), &ex::ratio_csv(&ex::ratio_decay(n, k, &ls, m, trials, seed)?))
            })
        }
        Command::SConnectivity(o) => {
            let o = merge(file, &o)?;
            let n = need(o.n, "n")?;
            let k = need(o.k, "k")?;
            let s = o.s.unwrap_or(2);
            let delta_k = o.delta_k.unwrap_or(0);
            let trials = need(o.trials, "trials")?;
            let seed = o.seed.unwrap_or(0);
            let coupled = o.coupled.unwrap_or(false) || o.thresholds_out.is_some();
            check_campaign(n, trials)?;
            if k == 0 || s == 0 {
                return Err(invalid("k and s must be >= 1"));
            }
            let (out, th_out) = (o.out.clone(), o.thresholds_out.clone());
            job("s-connectivity", &o, Some(seed), o.threads, o.out.as_ref(), o.manifest.as_ref(), move |sink| {
                let r = ex::s_connectivity_experiment(n, k, s, delta_k, trials, seed, coupled)?;
                sink.emit(out.as_ref(), &ex::s_connectivity_csv(n, &r))?;
                if coupled {
                    let csv = ex::s_thresholds_csv(&r);
                    match th_out {
                        Some(p) => sink.emit(Some(&p), &csv)?,
                        None => sink.emit(None, &csv)?,
                    }
                }
                Ok(())
            })
        }
        Command::GilbertCompare(o) => {
            let o = merge(file, &o)?;
            let n = need(o.n, "n")?;
            let trials = need(o.trials, "trials")?;
            let seed = o.seed.unwrap_or(0);
            check_campaign(n, trials)?;
            let out = o.out.clone();
            job("gilbert-compare", &o, Some(seed), o.threads, o.out.as_ref(), o.manifest.as_ref(), move |sink| {
                let c = ex::gilbert_penrose_compare(n, trials, seed)?;
                sink.emit(out.as_ref(), &ex::gilbert_csv(&c))?;
                eprintln!(
                    "coincidence fraction = {:.6}  r_connect >= r_no_isolated in all trials: {}",
                    c.coincidence_fraction, c.dominance
                );
                Ok(())
            })
        }
        Command::Constants(o) => {
            let o = merge(file, &o)?;
            let m = o.m.unwrap_or(DEFAULT_M);
            let n_tiles = o.n_tiles.unwrap_or_else(|| crate::local_events::paper_tile_parameter(m));
            let eta = o.eta.unwrap_or(0.5);
            let n_s = match (o.n, o.s) {
                (Some(n), Some(s)) => Some((n, s)),
                (None, None) => None,
                _ => return Err(invalid("--n and --s go together")),
            };
            let k = ex::paper_constants(m, n_tiles, eta, n_s)?;
            let out = o.out.clone();
            job("constants", &o, None, o.threads, o.out.as_ref(), o.manifest.as_ref(), move |sink| {
                sink.emit(out.as_ref(), &ex::constants_text(&k))
            })
        }
        Command::Selfcheck(o) => {
            let o = merge(file, &o)?;
            let seed = o.seed.unwrap_or(0);
            let out = o.out.clone();
            job("selfcheck", &o, Some(seed), o.threads, o.out.as_ref(), o.manifest.as_ref(), move |sink| {
                let results = crate::selfcheck::run_all(seed)?;
                let mut text = String::new();
                for r in &results {
                    text.push_str(&format!(
                        "{} {}: {} cases, {} violations\n",
                        if r.passed() { "PASS" } else { "FAIL" },
                        r.name,
                        r.cases,
                        r.violations
                    ));
                }
                sink.emit(out.as_ref(), &text)?;
                if results.iter().all(|r| r.passed()) {
                    Ok(())
                } else {
                    Err(Error::Io(std::io::Error::other("selfcheck found violations")))
                }
            })
        }
    }
}

fn check_campaign(n: f64, trials: u64) -> Result<()> {
    if !(n.is_finite() && n > 1.0) {
        return Err(invalid(format!("n must be > 1, got {n}")));
    }
    if trials == 0 {
        return Err(invalid("trials must be >= 1"));
    }
    Ok(())
}

fn execute(job: Job) -> Result<()> {
    let started = ex::unix_ms();
    let clock = std::time::Instant::now();
    let mut sink = Sink { outputs: Vec::new() };
    let action = job.action;
    ex::with_threads(job.threads, || action(&mut sink))??;
    if let Some(path) = job.manifest {
        RunManifest {
            command: job.command.to_string(),
            config: job.config,
            master_seed: job.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            started_unix_ms: started,
            finished_unix_ms: ex::unix_ms(),
            wall_time_s: clock.elapsed().as_secs_f64(),
            outputs: sink.outputs,
        }
        .write(&path)?;
    }
    Ok(())
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let file = match cli.config.as_deref().map(load_config).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let job = match prepare(cli.command, file.as_ref()) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match execute(job) {
        Ok(()) => 0,
        Err(e @ (Error::InvalidArgument(_) | Error::Parse(_) | Error::RegionTooSmall(_))) => {
            eprintln!("error: {e}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
