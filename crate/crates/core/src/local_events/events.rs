use crate::error::{invalid, Result};
use crate::graph::UndirectedGraph;
use crate::graph_analysis::component_labels;
use crate::knn_graph::KnnTable;
use crate::point_process::{Point, PointSet, Region};

use super::boxes::{BoxSpec, TileGrid};

/// Concentric subsquare of half the side of `region`.
pub fn half_of(region: Region) -> Region {
    Region::centered(region.center(), region.side / 2.0).expect("finite region")
}

/// Components of `g` whose points all lie strictly inside `half`, each as
/// an increasing vertex list, ordered by smallest vertex.
pub fn witnesses_in(g: &UndirectedGraph, points: &[Point], half: Region) -> Vec<Vec<usize>> {
    let (labels, count) = component_labels(g);
    let mut inside = vec![true; count];
    for (v, &c) in labels.iter().enumerate() {
        if !half.contains_strictly(points[v]) {
            inside[c] = false;
        }
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, &c) in labels.iter().enumerate() {
        if inside[c] {
            out[c].push(v);
        }
    }
    out.retain(|c| !c.is_empty());
    out
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(invalid("k must be >= 1"))
    } else {
        Ok(())
    }
}

/// Components of the k-NN graph on `ps` lying wholly inside the central
/// subsquare of `ps.region()`.
pub fn a_k_witnesses(ps: &PointSet, k: usize) -> Result<Vec<Vec<usize>>> {
    check_k(k)?;
    let table = KnnTable::build(ps, k)?;
    Ok(witnesses_in(&table.undirected(k), ps.points(), half_of(ps.region())))
}

/// Whether the k-NN graph on a box sample has a component wholly inside the
/// box's central subsquare. An empty sample has no component, so `false`.
pub fn detect_a_k(ps: &PointSet, k: usize) -> Result<bool> {
    Ok(!a_k_witnesses(ps, k)?.is_empty())
}

/// [`detect_a_k`] for every `k` in `ks`, from one neighbour table.
pub fn detect_a_k_for_each(ps: &PointSet, ks: &[usize]) -> Result<Vec<bool>> {
    let Some(&k_max) = ks.iter().max() else {
        return Ok(Vec::new());
    };
    if ks.contains(&0) {
        return Err(invalid("k must be >= 1"));
    }
    let table = KnnTable::build(ps, k_max)?;
    let half = half_of(ps.region());
    Ok(ks.iter().map(|&k| !witnesses_in(&table.undirected(k), ps.points(), half).is_empty()).collect())
}

/// Dense tiles of a box sample, reported only when `A_k` holds.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTiles {
    pub a_k: bool,
    /// Tiles with more than `(1 + eta) log n / N^2` points.
    pub strict: Vec<(u64, u64)>,
    /// Tiles with more than `(1 + eta/2) log n / N^2` points.
    pub primed: Vec<(u64, u64)>,
    pub max_count: u32,
}

pub fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta <= 0.5 {
        Ok(())
    } else {
        Err(invalid(format!("eta must lie in (0, 1/2], got {eta}")))
    }
}

/// Tiles `Q` for which `A_{k,Q}` (strict list) and `A'_{k,Q}` (primed list)
/// hold. Both lists are empty when `A_k` fails.
pub fn detect_a_kq(ps: &PointSet, spec: &BoxSpec, k: usize, n_tiles: u64, eta: f64) -> Result<DenseTiles> {
    check_eta(eta)?;
    let grid = TileGrid::count(*spec, n_tiles, ps.points())?;
    let a_k = detect_a_k(ps, k)?;
    Ok(dense_tiles(&grid, a_k, eta))
}

pub(crate) fn dense_tiles(grid: &TileGrid, a_k: bool, eta: f64) -> DenseTiles {
    let (strict, primed) = if a_k {
        (grid.tiles_above(grid.density_threshold(eta)), grid.tiles_above(grid.density_threshold(eta / 2.0)))
    } else {
        (Vec::new(), Vec::new())
    };
    DenseTiles { a_k, strict, primed, max_count: grid.max_count() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_events::boxes::make_box;

    fn box_set(spec: &BoxSpec, pts: Vec<Point>) -> PointSet {
        PointSet::from_points(spec.region(), pts, 0).unwrap()
    }

    /// `k + 1` points near the centre and a ring of `ring` points at radius
    /// `rad`, all tightly packed.
    fn cluster_and_ring(spec: &BoxSpec, k: usize, ring: usize, rad: f64) -> PointSet {
        let mut pts: Vec<Point> = (0..=k).map(|i| Point::new(1e-3 * i as f64, 0.0)).collect();
        for i in 0..ring {
            let t = i as f64 * std::f64::consts::TAU / ring as f64;
            pts.push(Point::new(rad * t.cos(), rad * t.sin()));
        }
        box_set(spec, pts)
    }

    #[test]
    fn empty_box_has_no_event() {
        let spec = make_box(4f64.exp(), 30).unwrap();
        assert!(!detect_a_k(&box_set(&spec, vec![]), 1).unwrap());
    }

    #[test]
    fn central_cluster_is_a_witness() {
        let spec = make_box(4f64.exp(), 30).unwrap();
        let ps = cluster_and_ring(&spec, 3, 400, 20.0);
        let w = a_k_witnesses(&ps, 3).unwrap();
        assert_eq!(w, vec![vec![0, 1, 2, 3]]);
        assert!(detect_a_k(&ps, 3).unwrap());
    }

    #[test]
    fn everything_outside_half() {
        let spec = make_box(4f64.exp(), 30).unwrap();
        let pts = (0..50).map(|i| Point::new(20.0 + 0.1 * i as f64, 25.0)).collect();
        assert!(!detect_a_k(&box_set(&spec, pts), 2).unwrap());
    }

    #[test]
    fn dense_tile_reported_only_with_event() {
        let spec = make_box(4f64.exp(), 30).unwrap();
        let (n_tiles, eta) = (1, 0.5);
        let need = 2 * ((1.0 + eta) * 4.0f64 / 1.0).ceil() as usize;
        let mut pts: Vec<Point> = (0..need).map(|i| Point::new(0.5 + 1e-3 * i as f64, 0.5)).collect();
        for i in 0..150 {
            let t = i as f64 * std::f64::consts::TAU / 150.0;
            pts.push(Point::new(20.0 * t.cos(), 20.0 * t.sin()));
        }
        let ps = box_set(&spec, pts);
        let d = detect_a_kq(&ps, &spec, 5, n_tiles, eta).unwrap();
        assert!(d.a_k);
        let grid = TileGrid::count(spec, n_tiles, ps.points()).unwrap();
        let q = grid.tile_of(Point::new(0.5, 0.5)).unwrap();
        assert_eq!(d.strict, vec![q]);
        assert!(d.primed.contains(&q));

        let far = cluster_and_ring(&spec, 0, 400, 20.0);
        let none = detect_a_kq(&far, &spec, 30, n_tiles, eta).unwrap();
        assert!(!none.a_k && none.strict.is_empty() && none.primed.is_empty());
        assert!(detect_a_kq(&ps, &spec, 5, 1, 0.0).is_err());
        assert!(detect_a_kq(&ps, &spec, 5, 1, 0.6).is_err());
    }

    #[test]
    fn uniform_occupancy_is_not_dense() {
        let spec = make_box(4f64.exp(), 2).unwrap();
        let grid = TileGrid::new(spec, 2).unwrap();
        let t = grid.tile_side();
        let o = grid.origin();
        let mut pts = Vec::new();
        for i in 0..grid.per_side() {
            for j in 0..grid.per_side() {
                pts.push(Point::new(o.x + (i as f64 + 0.5) * t, o.y + (j as f64 + 0.5) * t));
            }
        }
        let ps = box_set(&spec, pts);
        let grid = TileGrid::count(spec, 2, ps.points()).unwrap();
        assert_eq!(grid.max_count(), 1);
        assert!(grid.density_threshold(0.25) > 1.0);
        let d = dense_tiles(&grid, true, 0.25);
        assert!(d.strict.is_empty());
    }

    #[test]
    fn nested_over_k() {
        let spec = make_box(5f64.exp(), 6).unwrap();
        for seed in 0..20 {
            let ps = spec.sample(seed).unwrap();
            let ks: Vec<usize> = (1..=8).collect();
            let flags = detect_a_k_for_each(&ps, &ks).unwrap();
            for w in flags.windows(2) {
                assert!(w[0] || !w[1]);
            }
            assert_eq!(flags[0], detect_a_k(&ps, 1).unwrap());
        }
    }
}
