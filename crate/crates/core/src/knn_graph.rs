//! Exact k-nearest-neighbour and Gilbert disc graphs over a [`PointSet`].
//!
//! Both constructions use a uniform [`GridIndex`]. The k-NN search grows
//! square rings of cells around the query cell and stops only once the k-th
//! best candidate is strictly closer than anything outside the explored
//! block could be, so the result never depends on the cell size. Candidates
//! are ordered by `(squared distance, index)`.

use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::graph::UndirectedGraph;
use crate::point_process::{fmt_real, Point, PointSet};

/// Default expected occupancy per grid cell.
pub const DEFAULT_POINTS_PER_CELL: f64 = 2.0;

/// Uniform grid of square cells over a point set's region.
#[derive(Clone, Debug)]
pub struct GridIndex {
    origin: Point,
    cell_side: f64,
    nx: usize,
    ny: usize,
    /// `cells[cell_start[c]..cell_start[c + 1]]` are the points of cell `c`.
    cell_start: Vec<usize>,
    entries: Vec<usize>,
    slack: f64,
}

impl GridIndex {
    /// Index whose cell side gives `target_per_cell` expected points per cell.
    pub fn build(ps: &PointSet, target_per_cell: f64) -> Result<Self> {
        if !(target_per_cell.is_finite() && target_per_cell > 0.0) {
            return Err(invalid(format!("target_per_cell must be > 0, got {target_per_cell}")));
        }
        let region = ps.region();
        let cell_side = if ps.is_empty() || region.side == 0.0 {
            1.0
        } else {
            (region.area() * target_per_cell / ps.len() as f64).sqrt()
        };
        Ok(Self::with_cell_side(ps, cell_side))
    }

    pub fn with_cell_side(ps: &PointSet, cell_side: f64) -> Self {
        assert!(cell_side.is_finite() && cell_side > 0.0, "cell side must be positive");
        let region = ps.region();
        let origin = Point::new(region.origin_x, region.origin_y);
        let (nx, ny) = if ps.is_empty() {
            (0, 0)
        } else {
            let n = ((region.side / cell_side).ceil() as usize).max(1);
            (n, n)
        };
        let mut index = Self {
            origin,
            cell_side,
            nx,
            ny,
            cell_start: vec![0; nx * ny + 1],
            entries: vec![0; ps.len()],
            slack: 1e-9 * cell_side + 1e-12 * (origin.x.abs() + origin.y.abs() + region.side),
        };
        let cell_ids: Vec<usize> = ps.points().iter().map(|&p| index.cell_id(p)).collect();
        for &c in &cell_ids {
            index.cell_start[c + 1] += 1;
        }
        for c in 0..nx * ny {
            index.cell_start[c + 1] += index.cell_start[c];
        }
        let mut fill = index.cell_start.clone();
        for (i, &c) in cell_ids.iter().enumerate() {
            index.entries[fill[c]] = i;
            fill[c] += 1;
        }
        index
    }

    pub fn cell_side(&self) -> f64 {
        self.cell_side
    }

    /// Cells per side.
    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn cell_count(&self) -> usize {
        self.nx * self.ny
    }

    pub fn occupied_cells(&self) -> usize {
        (0..self.cell_count()).filter(|&c| self.cell_start[c + 1] > self.cell_start[c]).count()
    }

    /// Integer coordinates of the cell containing `p` (clamped to the grid).
    pub fn cell_of(&self, p: Point) -> (usize, usize) {
        let clamp = |v: f64, n: usize| -> usize {
            if v.is_nan() || v < 0.0 {
                0
            } else {
                (v.floor() as usize).min(n.saturating_sub(1))
            }
        };
        (
            clamp((p.x - self.origin.x) / self.cell_side, self.nx),
            clamp((p.y - self.origin.y) / self.cell_side, self.ny),
        )
    }

    fn cell_id(&self, p: Point) -> usize {
        let (cx, cy) = self.cell_of(p);
        cy * self.nx + cx
    }

    /// Point indices stored in cell `(cx, cy)`.
    pub fn cell(&self, cx: usize, cy: usize) -> &[usize] {
        let c = cy * self.nx + cx;
        &self.entries[self.cell_start[c]..self.cell_start[c + 1]]
    }

    /// Visits every cell at Chebyshev distance exactly `ring` from `(cx, cy)`.
    fn for_ring(&self, cx: usize, cy: usize, ring: usize, mut f: impl FnMut(&[usize])) {
        let (cx, cy, r) = (cx as isize, cy as isize, ring as isize);
        let (nx, ny) = (self.nx as isize, self.ny as isize);
        let y_lo = (cy - r).max(0);
        let y_hi = (cy + r).min(ny - 1);
        for y in y_lo..=y_hi {
            if y == cy - r || y == cy + r {
                for x in (cx - r).max(0)..=(cx + r).min(nx - 1) {
                    f(self.cell(x as usize, y as usize));
                }
            } else {
                if cx - r >= 0 {
                    f(self.cell((cx - r) as usize, y as usize));
                }
                if r > 0 && cx + r < nx {
                    f(self.cell((cx + r) as usize, y as usize));
                }
            }
        }
    }

    /// Lower bound on the distance from `q` to any point outside the block of
    /// cells within Chebyshev distance `ring` of `(cx, cy)`. Infinite when the
    /// block covers the grid.
    fn unexplored_bound(&self, q: Point, cx: usize, cy: usize, ring: usize) -> f64 {
        let mut bound = f64::INFINITY;
        let cs = self.cell_side;
        if cx > ring {
            bound = bound.min(q.x - (self.origin.x + (cx - ring) as f64 * cs));
        }
        if cx + ring + 1 < self.nx {
            bound = bound.min(self.origin.x + (cx + ring + 1) as f64 * cs - q.x);
        }
        if cy > ring {
            bound = bound.min(q.y - (self.origin.y + (cy - ring) as f64 * cs));
        }
        if cy + ring + 1 < self.ny {
            bound = bound.min(self.origin.y + (cy + ring + 1) as f64 * cs - q.y);
        }
        bound - self.slack
    }

    /// The `k` nearest other points to point `i`, nearest first, ties broken
    /// by index. Fewer than `k` only when the set has `<= k` points.
    pub fn nearest(&self, ps: &PointSet, i: usize, k: usize) -> Vec<(f64, usize)> {
        let mut best: Vec<(f64, usize)> = Vec::with_capacity(k + 1);
        if k == 0 || ps.len() < 2 {
            return best;
        }
        let q = ps.point(i);
        let (cx, cy) = self.cell_of(q);
        let max_ring = self.nx.max(self.ny);
        for ring in 0..=max_ring {
            self.for_ring(cx, cy, ring, |cell| {
                for &j in cell {
                    if j == i {
                        continue;
                    }
                    let cand = (q.dist2(ps.point(j)), j);
                    if best.len() == k && !lex_less(cand, best[k - 1]) {
                        continue;
                    }
                    let pos = best.partition_point(|&b| lex_less(b, cand));
                    best.insert(pos, cand);
                    best.truncate(k);
                }
            });
            let bound = self.unexplored_bound(q, cx, cy, ring);
            if bound.is_infinite() {
                break;
            }
            if best.len() == k && bound > 0.0 && best[k - 1].0 < bound * bound {
                break;
            }
        }
        best
    }
}

#[inline]
fn lex_less(a: (f64, usize), b: (f64, usize)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Which random geometric graph a [`NeighborGraph`] realizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    /// Each point joined to its `k` nearest neighbours.
    Knn { k: usize },
    /// Points joined when at distance at most `r`.
    Gilbert { r: f64 },
}

/// Directed k-NN lists up to some `k_max`; the graph for any `k <= k_max`
/// uses prefixes of the same lists.
#[derive(Clone, Debug)]
pub struct KnnTable<'a> {
    points: &'a PointSet,
    k_max: usize,
    /// Per-vertex list length: `min(k_max, m - 1)`.
    width: usize,
    neighbors: Vec<usize>,
    dist2: Vec<f64>,
}

impl<'a> KnnTable<'a> {
    pub fn build(ps: &'a PointSet, k_max: usize) -> Result<Self> {
        let index = GridIndex::build(ps, DEFAULT_POINTS_PER_CELL)?;
        Ok(Self::build_with_index(ps, k_max, &index))
    }

    pub fn build_with_index(ps: &'a PointSet, k_max: usize, index: &GridIndex) -> Self {
        let m = ps.len();
        let width = k_max.min(m.saturating_sub(1));
        let mut neighbors = Vec::with_capacity(m * width);
        let mut dist2 = Vec::with_capacity(m * width);
        for i in 0..m {
            let near = index.nearest(ps, i, width);
            debug_assert_eq!(near.len(), width);
            for (d2, j) in near {
                neighbors.push(j);
                dist2.push(d2);
            }
        }
        Self { points: ps, k_max, width, neighbors, dist2 }
    }

    pub fn points(&self) -> &'a PointSet {
        self.points
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// The `min(k_max, m - 1)` nearest neighbours of `v`, nearest first.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v * self.width..(v + 1) * self.width]
    }

    /// Squared distances matching [`neighbors`](Self::neighbors).
    pub fn squared_distances(&self, v: usize) -> &[f64] {
        &self.dist2[v * self.width..(v + 1) * self.width]
    }

    /// Undirected k-NN adjacency for `k <= k_max`.
    pub fn undirected(&self, k: usize) -> UndirectedGraph {
        assert!(k <= self.k_max, "k = {k} exceeds table k_max = {}", self.k_max);
        let m = self.points.len();
        let take = k.min(self.width);
        let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(2 * take); m];
        for u in 0..m {
            for &v in &self.neighbors(u)[..take] {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        UndirectedGraph::from_raw_adjacency(adj)
    }

    /// The k-NN graph for `k <= k_max`.
    pub fn graph(&self, k: usize) -> NeighborGraph<'a> {
        let take = k.min(self.width);
        let m = self.points.len();
        let mut out = Vec::with_capacity(m * take);
        for u in 0..m {
            out.extend_from_slice(&self.neighbors(u)[..take]);
        }
        NeighborGraph {
            points: self.points,
            model: Model::Knn { k },
            out_width: take,
            out,
            graph: self.undirected(k),
        }
    }
}

/// A random geometric graph over a point set: directed k-NN lists (k-NN
/// model only) plus the symmetrized undirected adjacency.
#[derive(Clone, Debug)]
pub struct NeighborGraph<'a> {
    points: &'a PointSet,
    model: Model,
    out_width: usize,
    out: Vec<usize>,
    graph: UndirectedGraph,
}

impl<'a> NeighborGraph<'a> {
    pub fn points(&self) -> &'a PointSet {
        self.points
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Directed k-NN list of `v`, nearest first (empty for Gilbert graphs).
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        if self.out_width == 0 {
            &[]
        } else {
            &self.out[v * self.out_width..(v + 1) * self.out_width]
        }
    }

    pub fn length(&self, u: usize, v: usize) -> f64 {
        self.points.point(u).dist(self.points.point(v))
    }

    /// CSV edge dump: a `# model=...` comment, a `u,v,length` header, then one
    /// row per undirected edge with `u < v`.
    pub fn to_edge_csv(&self) -> String {
        let mut s = String::new();
        match self.model {
            Model::Knn { k } => {
                let _ = writeln!(s, "# model=knn k={k}");
            }
            Model::Gilbert { r } => {
                let _ = writeln!(s, "# model=gilbert r={}", fmt_real(r));
            }
        }
        s.push_str("u,v,length\n");
        for (u, v) in self.graph.edges() {
            let _ = writeln!(s, "{u},{v},{}", fmt_real(self.length(u, v)));
        }
        s
    }
}

/// Uniform grid index with the given expected occupancy per cell.
pub fn build_index(ps: &PointSet, target_per_cell: f64) -> Result<GridIndex> {
    GridIndex::build(ps, target_per_cell)
}

/// The k-nearest-neighbour graph: each point joined to its `k` nearest
/// (all others when `m - 1 < k`).
pub fn build_knn(ps: &PointSet, k: usize) -> Result<NeighborGraph<'_>> {
    if k == 0 {
        return Err(invalid("k must be >= 1"));
    }
    Ok(KnnTable::build(ps, k)?.graph(k))
}

/// The Gilbert disc graph: an edge between every pair at distance `<= r`.
pub fn build_gilbert(ps: &PointSet, r: f64) -> Result<NeighborGraph<'_>> {
    if r.is_nan() || r < 0.0 {
        return Err(invalid(format!("radius must be >= 0, got {r}")));
    }
    let m = ps.len();
    let base = GridIndex::build(ps, DEFAULT_POINTS_PER_CELL)?;
    let index = if r > base.cell_side() && r.is_finite() {
        GridIndex::with_cell_side(ps, r)
    } else {
        base
    };
    let (nx, ny) = index.dims();
    let reach = if r.is_finite() {
        ((r / index.cell_side()).ceil() as usize).min(nx.max(ny))
    } else {
        nx.max(ny)
    };
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        let p = ps.point(i);
        let (cx, cy) = index.cell_of(p);
        let (x_lo, x_hi) = (cx.saturating_sub(reach), (cx + reach).min(nx - 1));
        let (y_lo, y_hi) = (cy.saturating_sub(reach), (cy + reach).min(ny - 1));
        for y in y_lo..=y_hi {
            for x in x_lo..=x_hi {
                for &j in index.cell(x, y) {
                    // compared as distances so that a radius read off an edge length keeps that edge
                    if j > i && p.dist(ps.point(j)) <= r {
                        adj[i].push(j);
                        adj[j].push(i);
                    }
                }
            }
        }
    }
    Ok(NeighborGraph {
        points: ps,
        model: Model::Gilbert { r },
        out_width: 0,
        out: Vec::new(),
        graph: UndirectedGraph::from_raw_adjacency(adj),
    })
}

/// Distance from `v` to its k-th nearest neighbour in a k-NN graph.
pub fn kth_nn_radius(g: &NeighborGraph<'_>, v: usize) -> Result<f64> {
    let Model::Knn { k } = g.model() else {
        return Err(invalid("k-th nearest neighbour radius needs a k-NN graph"));
    };
    if v >= g.vertex_count() {
        return Err(invalid(format!("vertex {v} out of range")));
    }
    let out = g.out_neighbors(v);
    if out.len() < k {
        return Err(Error::UndefinedRadius { vertex: v, k, available: out.len() });
    }
    Ok(g.length(v, out[k - 1]))
}

/// Longest undirected edge; 0 for an edgeless graph.
pub fn longest_edge(g: &NeighborGraph<'_>) -> f64 {
    g.graph().edges().map(|(u, v)| g.length(u, v)).fold(0.0, f64::max)
}
