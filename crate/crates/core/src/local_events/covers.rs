use crate::error::{Error, Result};
use crate::point_process::{Point, Region};

use super::boxes::BoxSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    /// Boxes with pairwise disjoint interiors tiling the inner region.
    Independent,
    /// Boxes whose quarter subsquares cover the inner region.
    Dominating,
}

/// Copies of the box `U_n` placed in `S_n = [0, sqrt(n)]^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cover {
    pub kind: CoverKind,
    pub boxes: Vec<BoxSpec>,
}

impl Cover {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }
}

/// `q = floor(sqrt(n) / (M sqrt(log n)))`, the number of whole boxes per side of `S_n`.
pub fn boxes_per_side(n: f64, m: u32) -> Result<u64> {
    let unit = BoxSpec::new(n, m, Point::new(0.0, 0.0))?.side();
    Ok((n.sqrt() / unit).floor() as u64)
}

/// The inner region `T_n = [u, (q - 1) u]^2` with `u = M sqrt(log n)`;
/// `None` when it has no interior (`q < 3`).
pub fn inner_region(n: f64, m: u32) -> Result<Option<Region>> {
    let q = boxes_per_side(n, m)?;
    if q < 3 {
        return Ok(None);
    }
    let u = BoxSpec::new(n, m, Point::new(0.0, 0.0))?.side();
    Ok(Some(Region::new(u, u, (q - 2) as f64 * u)?))
}

/// The independent cover `C1` of `T_n` and the dominating cover `C2`.
///
/// `C1` tiles `T_n` with `(q - 2)^2` boxes. Each `C1` box contributes 16
/// translates to `C2`, offset by `((i - 3/2) u/4, (j - 3/2) u/4)` for
/// `i, j in 0..4`: their quarter subsquares tile the `C1` box exactly, so
/// the quarter subsquares of `C2` tile `T_n`.
pub fn build_covers(n: f64, m: u32) -> Result<(Cover, Cover)> {
    let Some(t) = inner_region(n, m)? else {
        return Err(Error::RegionTooSmall(format!(
            "T_n has no interior for n = {n}, M = {m} (needs sqrt(n) >= 3 M sqrt(log n))"
        )));
    };
    let unit = BoxSpec::new(n, m, Point::new(0.0, 0.0))?;
    let u = unit.side();
    let per_side = (t.side / u).round() as usize;
    let mut c1 = Vec::with_capacity(per_side * per_side);
    for j in 0..per_side {
        for i in 0..per_side {
            let c = Point::new(t.origin_x + (i as f64 + 0.5) * u, t.origin_y + (j as f64 + 0.5) * u);
            c1.push(BoxSpec { center: c, ..unit });
        }
    }
    let mut c2 = Vec::with_capacity(16 * c1.len());
    for b in &c1 {
        for j in 0..4 {
            for i in 0..4 {
                c2.push(b.translated((i as f64 - 1.5) * u / 4.0, (j as f64 - 1.5) * u / 4.0));
            }
        }
    }
    assert!(
        (c2.len() as f64) < 16.0 * n / (u * u),
        "dominating cover exceeds 16 n / (M^2 log n) boxes"
    );
    Ok((
        Cover { kind: CoverKind::Independent, boxes: c1 },
        Cover { kind: CoverKind::Dominating, boxes: c2 },
    ))
}

/// Dominating cover of the whole region: boxes at spacing `u/4` whose
/// quarter subsquares tile `region` (the last row and column may overhang).
/// Boxes themselves extend beyond the region.
pub fn region_cover(region: Region, n: f64, m: u32) -> Result<Cover> {
    let unit = BoxSpec::new(n, m, Point::new(0.0, 0.0))?;
    let step = unit.side() / 4.0;
    let per_side = ((region.side / step).ceil() as usize).max(1);
    let mut boxes = Vec::with_capacity(per_side * per_side);
    for j in 0..per_side {
        for i in 0..per_side {
            let c = Point::new(
                region.origin_x + (i as f64 + 0.5) * step,
                region.origin_y + (j as f64 + 0.5) * step,
            );
            boxes.push(BoxSpec { center: c, ..unit });
        }
    }
    Ok(Cover { kind: CoverKind::Dominating, boxes })
}
