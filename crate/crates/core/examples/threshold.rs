//! Per-sample connectivity thresholds and the estimate of K_q / log n.
use knnrgg::experiments::estimate_threshold_constant;

fn main() -> knnrgg::Result<()> {
    let est = estimate_threshold_constant(8192.0, 50, 0.5, 42)?;
    println!("log n = {:.3}, median K = {}, c_hat = {:.4}", est.log_n, est.k_q, est.c_hat);
    for (k, count, f) in &est.cdf {
        println!("K = {k:2}: {count:3} samples, F = {f:.3}");
    }
    Ok(())
}
