//! Hexagonal hull of a component that witnesses A_k, and the check that
//! its reflected caps hold no points.
use knnrgg::knn_graph::build_knn;
use knnrgg::local_events::{a_k_witnesses, hex_hull, make_box, reflected_cap_empty};

fn main() -> knnrgg::Result<()> {
    let spec = make_box(4096.0, 6)?;
    let k = 2;
    for seed in 0..2000u64 {
        let ps = spec.sample(seed)?;
        let witnesses = a_k_witnesses(&ps, k)?;
        let Some(comp) = witnesses.first() else { continue };
        let g = build_knn(&ps, k)?;
        let pts: Vec<_> = comp.iter().map(|&v| ps.point(v)).collect();
        let hull = hex_hull(&pts)?;
        println!("seed {seed}: component of {} points", comp.len());
        for i in 0..6 {
            println!("  E{} length {:.4}", i + 1, hull.edge_length(i));
        }
        println!("  reflected caps empty: {}", reflected_cap_empty(&ps, comp, &g, &hull)?);
        return Ok(());
    }
    println!("no witness found");
    Ok(())
}
