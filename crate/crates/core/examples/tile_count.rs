//! Count the tiles met by a closed curve and compare with 9 l / tile side.
use knnrgg::local_events::{make_box, tiles_met_by_polyline, TileGrid};
use knnrgg::point_process::Point;

fn main() -> knnrgg::Result<()> {
    let spec = make_box(1e6, 4)?;
    let grid = TileGrid::new(spec, 8)?;
    let c = spec.center;
    for radius in [0.5, 2.0, 5.0] {
        let mut chain: Vec<Point> = (0..64)
            .map(|i| {
                let t = i as f64 / 64.0 * std::f64::consts::TAU;
                Point::new(c.x + radius * t.cos(), c.y + radius * t.sin())
            })
            .collect();
        chain.push(chain[0]);
        let tc = tiles_met_by_polyline(&chain, &grid)?;
        println!(
            "radius {radius}: length {:.3}, tiles met {}, bound {:.1}, within bound {}",
            tc.length, tc.tiles_met, tc.bound, tc.within_bound
        );
    }
    Ok(())
}
