//! Connected components of a sparse k-NN graph, largest first.
use knnrgg::graph_analysis::connected_components;
use knnrgg::knn_graph::build_knn;
use knnrgg::point_process::{sample_poisson, Region};

fn main() -> knnrgg::Result<()> {
    let ps = sample_poisson(Region::square_of_area(2048.0)?, 1.0, 11)?;
    let g = build_knn(&ps, 2)?;
    let dec = connected_components(&g);
    let mut comps: Vec<_> = dec.components().iter().collect();
    comps.sort_by_key(|c| std::cmp::Reverse(c.size()));
    println!("{} components", dec.len());
    for c in comps.iter().take(5) {
        println!("size {:5}  diameter {:8.3}", c.size(), c.diameter);
    }
    Ok(())
}
