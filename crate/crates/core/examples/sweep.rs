//! Connectivity probability of S_{n,k} for k = 1..12 with Wilson intervals.
use knnrgg::experiments::sweep;

fn main() -> knnrgg::Result<()> {
    let ks: Vec<usize> = (1..=12).collect();
    for row in sweep(4096.0, &ks, 100, 1)? {
        let e = &row;
        println!("k = {:2}: p = {:.3} [{:.3}, {:.3}]", row.k, e.p_hat, e.ci_lo, e.ci_hi);
    }
    Ok(())
}
