//! Build the k-nearest-neighbour graph and inspect a vertex.
use knnrgg::knn_graph::{build_knn, kth_nn_radius, longest_edge};
use knnrgg::point_process::{sample_poisson, Region};

fn main() -> knnrgg::Result<()> {
    let ps = sample_poisson(Region::square_of_area(4096.0)?, 1.0, 1)?;
    let g = build_knn(&ps, 6)?;
    println!("{} vertices, {} undirected edges", g.vertex_count(), g.graph().edge_count());
    println!("vertex 0 points to {:?}", g.out_neighbors(0));
    println!("vertex 0 has degree {}", g.graph().neighbors(0).len());
    println!("6th neighbour radius of vertex 0: {:.4}", kth_nn_radius(&g, 0)?);
    println!("longest edge: {:.4}", longest_edge(&g));
    Ok(())
}
