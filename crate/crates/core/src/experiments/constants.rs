use serde::Serialize;

use crate::error::{invalid, Result};

/// Explicit constants of the sharpness and s-connectivity arguments.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PaperConstants {
    pub m: u32,
    pub n_tiles: u64,
    pub eta: f64,
    /// `ceil(log(M^2 N^2 e^2) / log(1 + eta/2))`.
    pub l: u64,
    /// `(2 + 6 / log 2) L`.
    pub c: f64,
    /// `(n, s, floor(2 C s log log n))` when `n` and `s` are given.
    pub s_increment: Option<(f64, usize, u64)>,
}

pub fn paper_constants(m: u32, n_tiles: u64, eta: f64, n_s: Option<(f64, usize)>) -> Result<PaperConstants> {
    if m == 0 || n_tiles == 0 {
        return Err(invalid("M and N must be >= 1"));
    }
    crate::local_events::check_eta(eta)?;
    let log_num = 2.0 * (m as f64).ln() + 2.0 * (n_tiles as f64).ln() + 2.0;
    let l = (log_num / (eta / 2.0).ln_1p()).ceil() as u64;
    let c = (2.0 + 6.0 / std::f64::consts::LN_2) * l as f64;
    let s_increment = match n_s {
        Some((n, s)) => {
            if !(n > std::f64::consts::E) {
                return Err(invalid("log log n needs n > e"));
            }
            Some((n, s, (2.0 * c * s as f64 * n.ln().ln()).floor() as u64))
        }
        None => None,
    };
    Ok(PaperConstants { m, n_tiles, eta, l, c, s_increment })
}
