//! Sample a unit-intensity Poisson process on a square of area 1024 and
//! print the first few points as CSV.
use knnrgg::point_process::{sample_poisson, Region};

fn main() -> knnrgg::Result<()> {
    let region = Region::square_of_area(1024.0)?;
    let ps = sample_poisson(region, 1.0, 7)?;
    println!("{} points in a square of side {}", ps.len(), region.side);
    for line in ps.to_csv_string().lines().take(8) {
        println!("{line}");
    }
    Ok(())
}
