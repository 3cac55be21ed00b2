//! How fast P(A_{k+L}) falls relative to P(A_k) on coupled box samples.
use knnrgg::experiments::ratio_decay;

fn main() -> knnrgg::Result<()> {
    for row in ratio_decay(1e6, 2, &[0, 1, 2, 3], 4, 400, 3)? {
        println!(
            "k = {}, L = {}: {} of {} A_k boxes also have A_(k+L), ratio {:?}",
            row.k, row.l, row.count_k_plus_l, row.count_k, row.ratio
        );
    }
    Ok(())
}
