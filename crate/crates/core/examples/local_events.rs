//! Evaluate the local events on one box: does a component sit inside the
//! central half, and is some tile overcrowded?
use knnrgg::local_events::{evaluate_box, make_box, DEFAULT_ETA};

fn main() -> knnrgg::Result<()> {
    let n = 1e6;
    let spec = make_box(n, 4)?;
    println!("box side {:.3}, log n = {:.3}", spec.side(), spec.log_n());
    for seed in 0..10u64 {
        let ps = spec.sample(seed)?;
        let o = evaluate_box(&ps, &spec, 3, 4, DEFAULT_ETA)?;
        println!(
            "seed {seed}: {} points, A_k = {}, max tile count {}, dense tiles {}, cap check {:?}",
            o.points, o.a_k, o.max_tile_count, o.dense_tile_count, o.cap_check
        );
    }
    Ok(())
}
