//! Disc graph G_{n,r} at radius sqrt(log n / pi) and its isolated vertices.
use knnrgg::graph_analysis::{is_connected, isolated_vertices};
use knnrgg::knn_graph::build_gilbert;
use knnrgg::point_process::{sample_poisson, Region};

fn main() -> knnrgg::Result<()> {
    let n = 4096.0_f64;
    let ps = sample_poisson(Region::square_of_area(n)?, 1.0, 3)?;
    for scale in [0.8, 1.0, 1.2, 1.5] {
        let r = scale * (n.ln() / std::f64::consts::PI).sqrt();
        let g = build_gilbert(&ps, r)?;
        println!(
            "r = {r:.3}: {} isolated, connected = {}",
            isolated_vertices(&g).len(),
            is_connected(&g)
        );
    }
    Ok(())
}
