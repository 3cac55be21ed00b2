//! Compare the connectivity radius with the no-isolated-vertex radius.
use knnrgg::experiments::gilbert_penrose_compare;

fn main() -> knnrgg::Result<()> {
    let c = gilbert_penrose_compare(2048.0, 50, 4)?;
    println!("coincidence fraction {:.3}, r_connect >= r_no_isolated always: {}", c.coincidence_fraction, c.dominance);
    for t in c.trials.iter().take(5) {
        println!("trial {}: r_connect {:.4}, r_no_isolated {:.4}", t.trial, t.r_connect, t.r_no_isolated);
    }
    Ok(())
}
