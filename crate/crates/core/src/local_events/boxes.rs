use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::point_process::{sample_poisson, Point, PointSet, Region};

/// Default box scale `M`.
pub const DEFAULT_M: u32 = 30;
/// Default tiles per `sqrt(log n)`.
pub const DEFAULT_N: u32 = 16;
/// Default density excess `eta`.
pub const DEFAULT_ETA: f64 = 0.25;

/// The tile parameter `N = 10 * ceil(27 * M * pi)` used in the analysis.
pub fn paper_tile_parameter(m: u32) -> u64 {
    10 * (27.0 * m as f64 * std::f64::consts::PI).ceil() as u64
}

/// A box `U` of side `M * sqrt(log n)` centred at `center`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoxSpec {
    pub n: f64,
    pub m: u32,
    pub center: Point,
}

impl BoxSpec {
    pub fn new(n: f64, m: u32, center: Point) -> Result<Self> {
        if !(n.is_finite() && n > 1.0) {
            return Err(invalid(format!("box needs n > 1 so that log n > 0, got {n}")));
        }
        if m == 0 {
            return Err(invalid("M must be >= 1"));
        }
        if !(center.x.is_finite() && center.y.is_finite()) {
            return Err(invalid("box centre must be finite"));
        }
        Ok(Self { n, m, center })
    }

    pub fn log_n(&self) -> f64 {
        self.n.ln()
    }

    pub fn side(&self) -> f64 {
        self.m as f64 * self.log_n().sqrt()
    }

    pub fn region(&self) -> Region {
        self.concentric(1.0)
    }

    /// The central subsquare of half the side.
    pub fn half_region(&self) -> Region {
        self.concentric(0.5)
    }

    /// The central subsquare of a quarter of the side.
    pub fn quarter_region(&self) -> Region {
        self.concentric(0.25)
    }

    fn concentric(&self, scale: f64) -> Region {
        Region::centered(self.center, self.side() * scale).expect("box geometry is finite")
    }

    /// Strictly inside the central subsquare.
    pub fn in_half(&self, p: Point) -> bool {
        self.half_region().contains_strictly(p)
    }

    /// Unit-intensity Poisson sample of the box.
    pub fn sample(&self, seed: u64) -> Result<PointSet> {
        sample_poisson(self.region(), 1.0, seed)
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Self {
        Self { center: Point::new(self.center.x + dx, self.center.y + dy), ..*self }
    }
}

/// Box of side `M * sqrt(log n)` centred at the origin.
pub fn make_box(n: f64, m: u32) -> Result<BoxSpec> {
    BoxSpec::new(n, m, Point::new(0.0, 0.0))
}

/// Occupancy counts of the `M*N x M*N` tiles of side `sqrt(log n) / N`
/// that tile a box. Only occupied tiles are stored, so very fine tilings
/// cost no more than the point count.
#[derive(Clone, Debug, PartialEq)]
pub struct TileGrid {
    spec: BoxSpec,
    n_tiles: u64,
    tile_side: f64,
    per_side: u64,
    counts: BTreeMap<(u64, u64), u32>,
    total: usize,
}

impl TileGrid {
    pub fn new(spec: BoxSpec, n_tiles: u64) -> Result<Self> {
        if n_tiles == 0 {
            return Err(invalid("N must be >= 1"));
        }
        Ok(Self {
            spec,
            n_tiles,
            tile_side: spec.log_n().sqrt() / n_tiles as f64,
            per_side: spec.m as u64 * n_tiles,
            counts: BTreeMap::new(),
            total: 0,
        })
    }

    /// Tiling of `spec` populated with the points of `points` lying in the box.
    pub fn count(spec: BoxSpec, n_tiles: u64, points: &[Point]) -> Result<Self> {
        let mut grid = Self::new(spec, n_tiles)?;
        for &p in points {
            if let Some(t) = grid.tile_of(p) {
                *grid.counts.entry(t).or_insert(0) += 1;
                grid.total += 1;
            }
        }
        Ok(grid)
    }

    pub fn spec(&self) -> &BoxSpec {
        &self.spec
    }

    pub fn n_tiles(&self) -> u64 {
        self.n_tiles
    }

    pub fn tile_side(&self) -> f64 {
        self.tile_side
    }

    /// Tiles per side, `M * N`.
    pub fn per_side(&self) -> u64 {
        self.per_side
    }

    pub fn origin(&self) -> Point {
        let r = self.spec.region();
        Point::new(r.origin_x, r.origin_y)
    }

    /// Tile `(column, row)` holding `p`, or `None` outside the closed box.
    /// Points on a shared edge go to the tile above/right, except on the
    /// box's far edges.
    pub fn tile_of(&self, p: Point) -> Option<(u64, u64)> {
        if !self.spec.region().contains(p) {
            return None;
        }
        let o = self.origin();
        let idx = |v: f64| ((v / self.tile_side).floor().max(0.0) as u64).min(self.per_side - 1);
        Some((idx(p.x - o.x), idx(p.y - o.y)))
    }

    /// Closed square of tile `(column, row)`.
    pub fn tile_region(&self, tile: (u64, u64)) -> Region {
        let o = self.origin();
        Region::new(o.x + tile.0 as f64 * self.tile_side, o.y + tile.1 as f64 * self.tile_side, self.tile_side)
            .expect("tile geometry is finite")
    }

    pub fn count_at(&self, tile: (u64, u64)) -> u32 {
        self.counts.get(&tile).copied().unwrap_or(0)
    }

    /// Points counted; equals the number of input points inside the box.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn max_count(&self) -> u32 {
        self.counts.values().copied().max().unwrap_or(0)
    }

    /// Mean tile occupancy `log n / N^2`.
    pub fn mean_occupancy(&self) -> f64 {
        self.spec.log_n() / (self.n_tiles as f64 * self.n_tiles as f64)
    }

    /// `(1 + eta) * log n / N^2`.
    pub fn density_threshold(&self, eta: f64) -> f64 {
        (1.0 + eta) * self.mean_occupancy()
    }

    /// Tiles holding strictly more than `threshold` points, in (column, row) order.
    pub fn tiles_above(&self, threshold: f64) -> Vec<(u64, u64)> {
        self.counts.iter().filter(|(_, &c)| c as f64 > threshold).map(|(&t, _)| t).collect()
    }

    /// Occupied tiles and their counts.
    pub fn occupied(&self) -> impl Iterator<Item = ((u64, u64), u32)> + '_ {
        self.counts.iter().map(|(&t, &c)| (t, c))
    }
}
