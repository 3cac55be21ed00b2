//! Brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use knnrgg::graph::UndirectedGraph;
use knnrgg::point_process::{Point, PointSet};

/// Out-lists by full sort on `(d^2, index)`.
pub fn brute_knn(ps: &PointSet, k: usize) -> Vec<Vec<usize>> {
    let pts = ps.points();
    (0..pts.len())
        .map(|i| {
            let mut d: Vec<(f64, usize)> =
                (0..pts.len()).filter(|&j| j != i).map(|j| (pts[i].dist2(pts[j]), j)).collect();
            d.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            d.into_iter().take(k).map(|x| x.1).collect()
        })
        .collect()
}

pub fn brute_knn_edges(ps: &PointSet, k: usize) -> BTreeSet<(usize, usize)> {
    let mut e = BTreeSet::new();
    for (u, out) in brute_knn(ps, k).into_iter().enumerate() {
        for v in out {
            e.insert((u.min(v), u.max(v)));
        }
    }
    e
}

pub fn brute_gilbert_edges(ps: &PointSet, r: f64) -> BTreeSet<(usize, usize)> {
    let pts = ps.points();
    let mut e = BTreeSet::new();
    for u in 0..pts.len() {
        for v in u + 1..pts.len() {
            if pts[u].dist(pts[v]) <= r {
                e.insert((u, v));
            }
        }
    }
    e
}

pub fn edge_set(g: &UndirectedGraph) -> BTreeSet<(usize, usize)> {
    g.edges().map(|(u, v)| (u.min(v), u.max(v))).collect()
}

/// Connectedness of the graph restricted to vertices not in `removed`.
fn connected_without(g: &UndirectedGraph, removed: u32) -> bool {
    let m = g.vertex_count();
    let alive: Vec<usize> = (0..m).filter(|&v| removed & (1 << v) == 0).collect();
    let Some(&start) = alive.first() else { return true };
    let mut seen = removed | (1 << start);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if seen & (1 << w) == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen.count_ones() as usize == m
}

/// Vertex connectivity by trying every vertex subset: the size of the
/// smallest separating set, capped at `m - 1`, and 0 for `m <= 1`.
pub fn brute_vertex_connectivity(g: &UndirectedGraph) -> usize {
    let m = g.vertex_count();
    assert!(m <= 20);
    if m <= 1 {
        return 0;
    }
    for c in 0..m.saturating_sub(1) {
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize == c && !connected_without(g, mask) {
                return c;
            }
        }
    }
    m - 1
}

/// Bottleneck of the Euclidean minimum spanning tree by Prim's algorithm.
pub fn prim_bottleneck(points: &[Point]) -> f64 {
    let m = points.len();
    if m <= 1 {
        return 0.0;
    }
    let mut best = vec![f64::INFINITY; m];
    let mut done = vec![false; m];
    best[0] = 0.0;
    let mut bottleneck: f64 = 0.0;
    for _ in 0..m {
        let u = (0..m).filter(|&v| !done[v]).min_by(|&a, &b| best[a].total_cmp(&best[b])).unwrap();
        done[u] = true;
        bottleneck = bottleneck.max(best[u]);
        for v in 0..m {
            if !done[v] {
                best[v] = best[v].min(points[u].dist(points[v]));
            }
        }
    }
    bottleneck
}

/// Largest nearest-neighbour distance.
pub fn brute_no_isolated_radius(points: &[Point]) -> f64 {
    (0..points.len())
        .map(|i| {
            (0..points.len()).filter(|&j| j != i).map(|j| points[i].dist(points[j])).fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Whether segment `a-b` meets the closed box `[x0, x1] x [y0, y1]`
/// (Liang–Barsky clipping).
pub fn segment_meets_box(a: Point, b: Point, x0: f64, x1: f64, y0: f64, y1: f64) -> bool {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let (mut t0, mut t1) = (0.0_f64, 1.0_f64);
    for (p, q) in [(-dx, a.x - x0), (dx, x1 - a.x), (-dy, a.y - y0), (dy, y1 - a.y)] {
        if p == 0.0 {
            if q < 0.0 {
                return false;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
            if t0 > t1 {
                return false;
            }
        }
    }
    true
}

/// Number of tiles of a `per_side`-square grid anchored at `origin` that a
/// closed polyline meets, each tile enlarged by `slack` on every side.
pub fn rasterized_tiles(chain: &[Point], origin: Point, tile: f64, per_side: u64, slack: f64) -> usize {
    let mut hit = BTreeSet::new();
    for w in chain.windows(2) {
        let (a, b) = (w[0], w[1]);
        let lo_i = (((a.x.min(b.x) - origin.x) / tile).floor() as i64 - 1).max(0) as u64;
        let hi_i = (((a.x.max(b.x) - origin.x) / tile).floor() as i64 + 1).clamp(0, per_side as i64 - 1) as u64;
        let lo_j = (((a.y.min(b.y) - origin.y) / tile).floor() as i64 - 1).max(0) as u64;
        let hi_j = (((a.y.max(b.y) - origin.y) / tile).floor() as i64 + 1).clamp(0, per_side as i64 - 1) as u64;
        for i in lo_i..=hi_i {
            for j in lo_j..=hi_j {
                let x0 = origin.x + i as f64 * tile;
                let y0 = origin.y + j as f64 * tile;
                if segment_meets_box(a, b, x0 - slack, x0 + tile + slack, y0 - slack, y0 + tile + slack) {
                    hit.insert((i, j));
                }
            }
        }
    }
    hit.len()
}
