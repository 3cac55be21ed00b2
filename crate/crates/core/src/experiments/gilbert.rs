use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph_analysis::{is_connected, UnionFind};
use crate::knn_graph::{build_gilbert, KnnTable};
use crate::point_process::PointSet;

use super::runner::{run_trials, sample_global};
use super::threshold::check_n;

/// Largest nearest-neighbour distance: the least `r` with no isolated
/// vertex in the disc graph.
pub fn no_isolated_radius(ps: &PointSet) -> Result<f64> {
    if ps.len() < 2 {
        return Err(invalid("needs at least two points"));
    }
    let table = KnnTable::build(ps, 1)?;
    Ok((0..ps.len()).map(|v| table.squared_distances(v)[0]).fold(0.0, f64::max).sqrt())
}

/// Least `r` for which the disc graph is connected: the longest edge of a
/// Euclidean minimum spanning tree.
///
/// Starts from the no-isolated-vertex radius, which is a lower bound; if
/// the disc graph there is disconnected, Kruskal's algorithm runs over the
/// edges of disc graphs of growing radius until it spans.
pub fn connectivity_radius(ps: &PointSet) -> Result<f64> {
    let r0 = no_isolated_radius(ps)?;
    let g = build_gilbert(ps, r0)?;
    if is_connected(&g) {
        return Ok(r0);
    }
    let mut r = r0 * 1.5;
    loop {
        let g = build_gilbert(ps, r)?;
        let mut edges: Vec<(f64, usize, usize)> = g.graph().edges().map(|(u, v)| (g.length(u, v), u, v)).collect();
        edges.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
        let mut uf = UnionFind::new(ps.len());
        for (d, u, v) in edges {
            if uf.union(u, v) && uf.set_count() == 1 {
                return Ok(d);
            }
        }
        r *= 1.5;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GilbertTrial {
    pub trial: u64,
    pub points: usize,
    pub degenerate: u64,
    pub r_connect: f64,
    pub r_no_isolated: f64,
}

impl GilbertTrial {
    /// The two radii agree to within `1e-12`.
    pub fn coincide(&self) -> bool {
        (self.r_connect - self.r_no_isolated).abs() <= 1e-12
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GilbertComparison {
    pub n: f64,
    pub trials: Vec<GilbertTrial>,
    pub coincidence_fraction: f64,
    /// `r_connect >= r_no_isolated` in every trial.
    pub dominance: bool,
}

pub fn gilbert_penrose_compare(n: f64, trials: u64, seed: u64) -> Result<GilbertComparison> {
    check_n(n)?;
    if trials == 0 {
        return Err(invalid("trials must be >= 1"));
    }
    let rows = run_trials(trials, seed, |trial, s| {
        let g = sample_global(n, s)?;
        Ok(GilbertTrial {
            trial,
            points: g.points.len(),
            degenerate: g.degenerate,
            r_connect: connectivity_radius(&g.points)?,
            r_no_isolated: no_isolated_radius(&g.points)?,
        })
    })?;
    let equal = rows.iter().filter(|r| r.coincide()).count();
    Ok(GilbertComparison {
        n,
        coincidence_fraction: equal as f64 / rows.len() as f64,
        dominance: rows.iter().all(|r| r.r_connect >= r.r_no_isolated),
        trials: rows,
    })
}
