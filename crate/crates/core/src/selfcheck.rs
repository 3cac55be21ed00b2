//! Deterministic property suites behind the `selfcheck` subcommand.
//!
//! Each suite samples seeded inputs and counts violations of a structural
//! property: k-NN edge nesting, the deletion lemma for k-NN graphs, nesting
//! of the local events in `k`, persistence of a dense-tile event under
//! deletion, emptiness of reflected caps, cover geometry, the curve–tile
//! bound, monotonicity of s-connectivity and agreement of the two vertex
//! connectivity routes, and dominance of the Gilbert radii.

use rand::seq::index::sample as sample_indices;
use rand::Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::experiments::{connectivity_radius, no_isolated_radius, sample_global};
use crate::graph::UndirectedGraph;
use crate::graph_analysis::{is_s_connected, vertex_connectivity, vertex_connectivity_by_pairs};
use crate::knn_graph::KnnTable;
use crate::local_events::{
    build_covers, detect_a_k_for_each, detect_a_kq, evaluate_box, hex_hull, inner_region, make_box, reflected_cap_empty,
    tiles_met_by_polyline, witnesses_in, BoxSpec, TileGrid,
};
use crate::point_process::{delete_points, surviving_indices, Point, PointSet};
use crate::rng::{self, substream_seed, AUX_STREAM};

/// Cases run and violations found by one suite.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: u64,
    pub violations: u64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.cases > 0
    }
}

fn per_case<T: Send>(cases: u64, seed: u64, f: impl Fn(u64) -> Result<T> + Sync) -> Result<Vec<T>> {
    (0..cases).into_par_iter().map(|c| f(substream_seed(seed, c))).collect()
}

fn outcome(name: &'static str, results: Vec<(u64, u64)>) -> CheckOutcome {
    let (cases, violations) = results.iter().fold((0, 0), |a, r| (a.0 + r.0, a.1 + r.1));
    CheckOutcome { name, cases, violations }
}

/// `edges(G_k) ⊆ edges(G_{k+1})` for `k = 1..20` on samples of `n = 1024`.
pub fn edge_nesting(samples: u64, seed: u64) -> Result<CheckOutcome> {
    let name = "k-NN edge nesting";
    let r = per_case(samples, seed, |s| {
        let g = sample_global(1024.0, s)?;
        let table = KnnTable::build(&g.points, 21)?;
        let mut bad = 0;
        let mut prev = table.undirected(1);
        for k in 2..=21 {
            let next = table.undirected(k);
            bad += u64::from(!prev.is_subgraph_of(&next));
            prev = next;
        }
        Ok((20, bad))
    })?;
    Ok(outcome(name, r))
}

/// Victim set of `l` distinct indices below `len`.
fn victims(len: usize, l: usize, rng: &mut impl Rng) -> Vec<usize> {
    sample_indices(rng, len, l).into_vec()
}

/// `G_k(P \ T) ⊆ G_{k+L}(P)` on surviving labels, `|T| = L <= 5`.
pub fn deletion_subgraph(cases: u64, seed: u64) -> Result<CheckOutcome> {
    let name = "deletion lemma (graphs)";
    let r = per_case(cases, seed, |s| {
        let mut rng = rng::stream(s, AUX_STREAM);
        let n = rng.gen_range(50.0..400.0);
        let g = sample_global(n, s)?;
        let ps = &g.points;
        let l = rng.gen_range(1..=5.min(ps.len() - 1));
        let k = rng.gen_range(1..=10);
        let t = victims(ps.len(), l, &mut rng);
        let reduced = delete_points(ps, &t)?;
        let labels = surviving_indices(ps.len(), &t);
        let small = KnnTable::build(&reduced, k)?.undirected(k);
        let big = KnnTable::build(ps, k + l)?.undirected(k + l);
        let ok = small.edges().all(|(u, v)| big.has_edge(labels[u], labels[v]));
        Ok((1, u64::from(!ok)))
    })?;
    Ok(outcome(name, r))
}

/// `A_{k'}` implies `A_k` for `k <= k' <= k + 10` on box samples.
pub fn event_nesting(boxes: u64, seed: u64) -> Result<CheckOutcome> {
    let name = "A_k nesting";
    let spec = make_box(2f64.powi(12), 6)?;
    let r = per_case(boxes, seed, |s| {
        let ps = spec.sample(s)?;
        let ks: Vec<usize> = (1..=14).collect();
        let flags = detect_a_k_for_each(&ps, &ks)?;
        let mut bad = 0;
        let mut pairs = 0;
        for k in 0..4 {
            for kp in k + 1..=k + 10 {
                pairs += 1;
                bad += u64::from(flags[kp] && !flags[k]);
            }
        }
        Ok((pairs, bad))
    })?;
    Ok(outcome(name, r))
}

/// Box sample with a planted cluster that witnesses `A_{k+L,Q}`, used by
/// [`deletion_event`]. Returns the sample, the tile `Q` and the indices
/// of the cluster, or `None` if the plant did not produce the event.
pub fn planted_dense_case(
    spec: &BoxSpec,
    n_tiles: u64,
    eta: f64,
    k_total: usize,
    seed: u64,
) -> Result<Option<(PointSet, (u64, u64), Vec<usize>)>> {
    let grid = TileGrid::new(*spec, n_tiles)?;
    let half = spec.half_region();
    let mut rng = rng::stream(seed, AUX_STREAM);
    // tiles inside the central subsquare (up to rounding of shared edges)
    let tol = 1e-9 * spec.side();
    let inner: Vec<(u64, u64)> = (0..grid.per_side())
        .flat_map(|i| (0..grid.per_side()).map(move |j| (i, j)))
        .filter(|&t| {
            let r = grid.tile_region(t);
            r.origin_x >= half.origin_x - tol
                && r.origin_y >= half.origin_y - tol
                && r.max_x() <= half.max_x() + tol
                && r.max_y() <= half.max_y() + tol
        })
        .collect();
    if inner.is_empty() {
        return Ok(None);
    }
    let q = inner[rng.gen_range(0..inner.len())];
    let tile = grid.tile_region(q);
    let c = tile.center();
    let radius = 0.15 * tile.side;
    let moat = c.dist(Point::new(tile.origin_x, tile.origin_y)) + 1.5 * (k_total as f64).sqrt();
    let count = (grid.density_threshold(eta).floor() as usize + 1).max(k_total + 1) + 10;
    let base = spec.sample(seed)?;
    let mut pts: Vec<Point> = base.points().iter().copied().filter(|p| p.dist(c) > moat).collect();
    for _ in 0..count {
        let (r, a) = (radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
        pts.push(Point::new(c.x + r * a.cos(), c.y + r * a.sin()));
    }
    let cluster: Vec<usize> = (pts.len() - count..pts.len()).collect();
    let ps = PointSet::from_points(spec.region(), pts, seed)?;
    let dense = detect_a_kq(&ps, spec, k_total, n_tiles, eta)?;
    Ok(dense.strict.contains(&q).then_some((ps, q, cluster)))
}

/// `A_{k+L,Q}` and deletion of `L < eta log n / (2 N^2)` points of `Q`
/// leave `A'_{k,Q}`.
pub fn deletion_event(cases: u64, seed: u64) -> Result<CheckOutcome> {
    let name = "deletion lemma (events)";
    let (n_tiles, eta) = (1, 0.5);
    let spec = BoxSpec::new(40f64.exp(), 4, Point::new(0.0, 0.0))?;
    let r = per_case(cases, seed, |s| {
        let mut rng = rng::stream(s, AUX_STREAM + 1);
        let limit = eta * spec.log_n() / (2.0 * (n_tiles * n_tiles) as f64);
        let l = rng.gen_range(1..=5usize);
        assert!((l as f64) < limit);
        let k = rng.gen_range(1..=5usize);
        for attempt in 0..20 {
            let Some((ps, q, cluster)) = planted_dense_case(&spec, n_tiles, eta, k + l, substream_seed(s, attempt))?
            else {
                continue;
            };
            let pick = victims(cluster.len(), l, &mut rng);
            let t: Vec<usize> = pick.iter().map(|&i| cluster[i]).collect();
            let reduced = delete_points(&ps, &t)?;
            let after = detect_a_kq(&reduced, &spec, k, n_tiles, eta)?;
            return Ok((1, u64::from(!after.primed.contains(&q))));
        }
        Ok((0, 0))
    })?;
    Ok(outcome(name, r))
}

/// Reflected caps of witnesses harvested from box samples are empty, and
/// hex-hull boundaries of length at least one tile side obey the
/// curve–tile bound. Returns both outcomes.
pub fn witness_geometry(boxes: u64, seed: u64) -> Result<(CheckOutcome, CheckOutcome)> {
    let spec = make_box(2f64.powi(12), 6)?;
    let n_tiles = 16;
    let r = per_case(boxes, seed, |s| {
        let ps = spec.sample(s)?;
        let o = evaluate_box(&ps, &spec, 1, n_tiles, 0.25)?;
        let caps = match o.cap_check {
            Some(ok) => (1, u64::from(!ok)),
            None => (0, 0),
        };
        let table = KnnTable::build(&ps, 1)?;
        let g = table.graph(1);
        let grid = TileGrid::new(spec, n_tiles)?;
        let (mut loops, mut bad) = (0, 0);
        for w in witnesses_in(g.graph(), ps.points(), spec.half_region()) {
            let pts: Vec<Point> = w.iter().map(|&v| ps.point(v)).collect();
            let hull = hex_hull(&pts)?;
            let _ = reflected_cap_empty(&ps, &w, &g, &hull)?;
            let chain = hull.boundary();
            if crate::geometry::polyline_length(&chain) >= grid.tile_side() {
                let t = tiles_met_by_polyline(&chain, &grid)?;
                loops += 1;
                bad += u64::from(!t.within_bound);
            }
        }
        Ok((caps, (loops, bad)))
    })?;
    let caps = outcome("reflected caps empty", r.iter().map(|x| x.0).collect());
    let tiles = outcome("curve-tile bound", r.iter().map(|x| x.1).collect());
    Ok((caps, tiles))
}

/// Quarter subsquares of the dominating cover cover an `n`-lattice of `T_n`.
pub fn cover_geometry() -> Result<CheckOutcome> {
    let (n, m) = (2f64.powi(16), 3);
    let (c1, c2) = build_covers(n, m)?;
    let t = inner_region(n, m)?.expect("nonempty inner region");
    let mut cases = 0;
    let mut bad = 0;
    let steps = 60;
    for i in 0..=steps {
        for j in 0..=steps {
            let p = Point::new(
                t.origin_x + t.side * i as f64 / steps as f64,
                t.origin_y + t.side * j as f64 / steps as f64,
            );
            cases += 1;
            let tol = 1e-9 * t.side;
            let covered = c2.boxes.iter().any(|b| {
                let r = b.quarter_region();
                p.x >= r.origin_x - tol && p.x <= r.max_x() + tol && p.y >= r.origin_y - tol && p.y <= r.max_y() + tol
            });
            bad += u64::from(!covered);
        }
    }
    for (a, x) in c1.boxes.iter().enumerate() {
        for y in &c1.boxes[a + 1..] {
            cases += 1;
            let s = x.side();
            let disjoint = s - (x.center.x - y.center.x).abs() <= 1e-9 * s || s - (x.center.y - y.center.y).abs() <= 1e-9 * s;
            bad += u64::from(!disjoint);
        }
    }
    Ok(CheckOutcome { name: "cover geometry", cases, violations: bad })
}

/// Random graph on `m <= 10` vertices with edge probability `p`.
pub fn random_graph(rng: &mut impl Rng, m: usize, p: f64) -> UndirectedGraph {
    let mut edges = Vec::new();
    for u in 0..m {
        for v in u + 1..m {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    UndirectedGraph::from_edges(m, edges)
}

/// `is_s_connected` is non-increasing in `s`, and both connectivity routes agree.
pub fn connectivity_routes(cases: u64, seed: u64) -> Result<CheckOutcome> {
    let name = "vertex connectivity";
    let r = per_case(cases, seed, |s| {
        let mut rng = rng::stream(s, AUX_STREAM);
        let m = rng.gen_range(1..=12);
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, m, p);
        let kappa = vertex_connectivity(&g);
        let mut bad = u64::from(kappa != vertex_connectivity_by_pairs(&g) && m > 1);
        let flags: Vec<bool> = (1..=m).map(|s| is_s_connected(&g, s)).collect();
        bad += u64::from(flags.windows(2).any(|w| !w[0] && w[1]));
        bad += u64::from(g.min_degree().is_some_and(|d| kappa > d));
        Ok((1, bad))
    })?;
    Ok(outcome(name, r))
}

/// `r_connect >= r_no_isolated` on global samples.
pub fn gilbert_dominance(samples: u64, seed: u64) -> Result<CheckOutcome> {
    let name = "Gilbert radii";
    let r = per_case(samples, seed, |s| {
        let g = sample_global(500.0, s)?;
        Ok((1, u64::from(connectivity_radius(&g.points)? < no_isolated_radius(&g.points)?)))
    })?;
    Ok(outcome(name, r))
}

/// Every suite at its default size.
pub fn run_all(seed: u64) -> Result<Vec<CheckOutcome>> {
    let (caps, tiles) = witness_geometry(60, substream_seed(seed, 4))?;
    Ok(vec![
        edge_nesting(20, substream_seed(seed, 0))?,
        deletion_subgraph(100, substream_seed(seed, 1))?,
        event_nesting(40, substream_seed(seed, 2))?,
        deletion_event(30, substream_seed(seed, 3))?,
        caps,
        tiles,
        cover_geometry()?,
        connectivity_routes(200, substream_seed(seed, 5))?,
        gilbert_dominance(30, substream_seed(seed, 6))?,
    ])
}
