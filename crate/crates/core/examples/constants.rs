//! The explicit constants L and C, and the increment for s-connectivity.
use knnrgg::experiments::{constants_text, paper_constants};
use knnrgg::local_events::paper_tile_parameter;

fn main() -> knnrgg::Result<()> {
    let m = 30;
    let k = paper_constants(m, paper_tile_parameter(m), 0.5, Some((1e9, 2)))?;
    print!("{}", constants_text(&k));
    Ok(())
}
