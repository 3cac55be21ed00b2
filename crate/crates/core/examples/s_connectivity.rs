//! Vertex connectivity of k-NN graphs, and the smallest k giving
//! s-connectivity for s = 1..4 on one sample.
use knnrgg::experiments::thresholds_up_to;
use knnrgg::graph_analysis::{is_s_connected, vertex_connectivity};
use knnrgg::knn_graph::build_knn;
use knnrgg::point_process::{sample_poisson, Region};

fn main() -> knnrgg::Result<()> {
    let ps = sample_poisson(Region::square_of_area(1024.0)?, 1.0, 5)?;
    for k in [4, 8, 12, 16] {
        let g = build_knn(&ps, k)?;
        println!("k = {k:2}: kappa = {}, 2-connected = {}", vertex_connectivity(&g), is_s_connected(&g, 2));
    }
    for (s, ks) in thresholds_up_to(&ps, 4)?.iter().enumerate() {
        println!("K_{} = {ks:?}", s + 1);
    }
    Ok(())
}
