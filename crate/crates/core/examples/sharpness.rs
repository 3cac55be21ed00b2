//! Width of the window where connectivity goes from unlikely to likely.
use knnrgg::experiments::sharpness_width;

fn main() -> knnrgg::Result<()> {
    for n in [1024.0, 4096.0, 16384.0] {
        let s = sharpness_width(n, 0.1, 100, 9)?;
        println!("n = {n:6}: k_0.1 = {}, k_0.9 = {}, width = {}", s.k_eps, s.k_one_minus_eps, s.width);
    }
    Ok(())
}
