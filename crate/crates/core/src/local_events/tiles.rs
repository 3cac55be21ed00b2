use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::geometry::polyline_length;
use crate::point_process::Point;

use super::boxes::TileGrid;

/// Tolerance, in tile units, for a curve touching a tile boundary.
pub const TILE_SLACK: f64 = 1e-9;

/// Result of [`tiles_met_by_polyline`].
#[derive(Clone, Debug, PartialEq)]
pub struct TileCount {
    /// Number of closed tiles the curve meets.
    pub tiles_met: usize,
    pub length: f64,
    /// `9 * length / tile_side`.
    pub bound: f64,
    /// `tiles_met <= bound`. The bound can fail for loops shorter than a
    /// tile side, which may still meet one tile.
    pub within_bound: bool,
}

/// Counts the tiles of `grid` met by a closed polyline, given as a vertex
/// list whose last vertex repeats the first.
///
/// A tile counts as met when the curve comes within [`TILE_SLACK`] tile
/// lengths of the closed tile (in the max norm). Each segment is swept
/// column by column: clipped to the column's slab, its y-range gives the
/// rows it meets.
pub fn tiles_met_by_polyline(chain: &[Point], grid: &TileGrid) -> Result<TileCount> {
    if chain.len() < 2 || chain.first() != chain.last() {
        return Err(invalid("polyline must be closed: last vertex must equal the first"));
    }
    let length = polyline_length(chain);
    if !(length > 0.0 && length.is_finite()) {
        return Err(invalid("polyline must have finite positive length"));
    }
    let region = grid.spec().region();
    let tol = TILE_SLACK * grid.tile_side();
    if let Some(p) = chain.iter().find(|p| {
        !(p.x >= region.origin_x - tol
            && p.x <= region.max_x() + tol
            && p.y >= region.origin_y - tol
            && p.y <= region.max_y() + tol)
    }) {
        return Err(invalid(format!("polyline vertex {p:?} lies outside the box")));
    }
    let o = grid.origin();
    let s = grid.tile_side();
    let to_tile = |p: Point| Point::new((p.x - o.x) / s, (p.y - o.y) / s);
    let last = grid.per_side() as i64 - 1;
    let mut met = BTreeSet::new();
    for w in chain.windows(2) {
        sweep_segment(to_tile(w[0]), to_tile(w[1]), last, &mut met);
    }
    let bound = 9.0 * length / s;
    Ok(TileCount { tiles_met: met.len(), length, bound, within_bound: met.len() as f64 <= bound })
}

fn sweep_segment(a: Point, b: Point, last: i64, met: &mut BTreeSet<(i64, i64)>) {
    let eps = TILE_SLACK;
    let (xlo, xhi) = (a.x.min(b.x), a.x.max(b.x));
    let c_lo = ((xlo - 1.0 - eps).ceil() as i64).max(0);
    let c_hi = ((xhi + eps).floor() as i64).min(last);
    let dx = b.x - a.x;
    for c in c_lo..=c_hi {
        let (t0, t1) = if dx == 0.0 {
            (0.0, 1.0)
        } else {
            let ta = (c as f64 - eps - a.x) / dx;
            let tb = (c as f64 + 1.0 + eps - a.x) / dx;
            (ta.min(tb).max(0.0), ta.max(tb).min(1.0))
        };
        if t0 > t1 {
            continue;
        }
        let y0 = a.y + t0 * (b.y - a.y);
        let y1 = a.y + t1 * (b.y - a.y);
        let (ylo, yhi) = (y0.min(y1), y0.max(y1));
        let r_lo = ((ylo - 1.0 - eps).ceil() as i64).max(0);
        let r_hi = ((yhi + eps).floor() as i64).min(last);
        for r in r_lo..=r_hi {
            met.insert((c, r));
        }
    }
}
