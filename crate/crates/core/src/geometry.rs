//! Planar helpers: convex hull, rotating-calipers diameter, polylines.

use crate::point_process::Point;

#[inline]
pub fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Convex hull by Andrew's monotone chain, counter-clockwise, without
/// collinear boundary points. Degenerate inputs give 1 or 2 vertices.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Diameter of a convex polygon (counter-clockwise) by rotating calipers.
pub fn convex_diameter(hull: &[Point]) -> f64 {
    let n = hull.len();
    match n {
        0 | 1 => return 0.0,
        2 => return hull[0].dist(hull[1]),
        _ => {}
    }
    let mut best2: f64 = 0.0;
    let mut j = 1;
    for i in 0..n {
        let ni = (i + 1) % n;
        while cross(hull[i], hull[ni], hull[(j + 1) % n]).abs() > cross(hull[i], hull[ni], hull[j]).abs() {
            j = (j + 1) % n;
        }
        best2 = best2.max(hull[i].dist2(hull[j])).max(hull[ni].dist2(hull[j]));
    }
    best2.sqrt()
}

/// Largest pairwise distance. Brute force for small inputs, hull plus
/// rotating calipers otherwise; both exact.
pub fn point_set_diameter(points: &[Point]) -> f64 {
    const BRUTE_FORCE_MAX: usize = 32;
    if points.len() <= BRUTE_FORCE_MAX {
        let mut best2: f64 = 0.0;
        for (i, &p) in points.iter().enumerate() {
            for &q in &points[i + 1..] {
                best2 = best2.max(p.dist2(q));
            }
        }
        best2.sqrt()
    } else {
        convex_diameter(&convex_hull(points))
    }
}

/// Total length of a polyline given as its vertex sequence.
pub fn polyline_length(chain: &[Point]) -> f64 {
    chain.windows(2).map(|w| w[0].dist(w[1])).sum()
}

/// Axis-aligned bounding box `(min, max)`; `None` for no points.
pub fn bounding_box(points: impl IntoIterator<Item = Point>) -> Option<(Point, Point)> {
    points.into_iter().fold(None, |acc, p| match acc {
        None => Some((p, p)),
        Some((lo, hi)) => Some((
            Point::new(lo.x.min(p.x), lo.y.min(p.y)),
            Point::new(hi.x.max(p.x), hi.y.max(p.y)),
        )),
    })
}
