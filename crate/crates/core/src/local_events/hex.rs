use crate::error::{invalid, Result};
use crate::knn_graph::{kth_nn_radius, Model, NeighborGraph};
use crate::point_process::{Point, PointSet};

/// Classification slack for the reflected caps.
pub const CAP_SLACK: f64 = 1e-9;

/// Outward unit normal of edge `E_{i+1}`: angles 30, 90, ..., 330 degrees.
/// `E_2` (normal 90 degrees) is the top edge and `E_5` the bottom edge.
pub fn hex_normal(i: usize) -> Point {
    let a = (30.0 + 60.0 * i as f64).to_radians();
    Point::new(a.cos(), a.sin())
}

#[inline]
fn dot(u: Point, p: Point) -> f64 {
    u.x * p.x + u.y * p.y
}

/// Intersection of the three narrowest slabs bounded by lines at angles
/// 0, pi/3 and 2pi/3 that contain a point set.
///
/// Index `i` in `0..6` stands for edge `E_{i+1}`, labelled counter-clockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct HexHull {
    /// Support values `h_i = max_p <u_i, p>`.
    pub offsets: [f64; 6],
    /// `vertices[i]` joins edge `i` to edge `i + 1`.
    pub vertices: [Point; 6],
    /// Per edge, the smallest input index attaining the support value.
    pub contacts: [usize; 6],
}

impl HexHull {
    pub fn normal(&self, i: usize) -> Point {
        hex_normal(i)
    }

    /// Endpoints of edge `i`, counter-clockwise.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertices[(i + 5) % 6], self.vertices[i])
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        let (a, b) = self.edge(i);
        a.dist(b)
    }

    /// Closed boundary polyline starting and ending at `vertices[5]`.
    pub fn boundary(&self) -> Vec<Point> {
        let mut chain = Vec::with_capacity(7);
        chain.push(self.vertices[5]);
        chain.extend_from_slice(&self.vertices);
        chain
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        (0..6).all(|i| dot(hex_normal(i), p) <= self.offsets[i] + tol)
    }

    /// Inside with margin `slack` from every boundary line.
    pub fn contains_strictly(&self, p: Point, slack: f64) -> bool {
        (0..6).all(|i| dot(hex_normal(i), p) < self.offsets[i] - slack)
    }

    /// Mirror image of `p` in the line of edge `i`.
    pub fn reflect(&self, i: usize, p: Point) -> Point {
        let u = hex_normal(i);
        let t = 2.0 * (dot(u, p) - self.offsets[i]);
        Point::new(p.x - t * u.x, p.y - t * u.y)
    }
}

/// Hexagonal hull of a nonempty point list.
pub fn hex_hull(points: &[Point]) -> Result<HexHull> {
    if points.is_empty() {
        return Err(invalid("hex hull of an empty point list"));
    }
    let mut offsets = [f64::NEG_INFINITY; 6];
    let mut contacts = [0; 6];
    for i in 0..6 {
        let u = hex_normal(i);
        for (j, &p) in points.iter().enumerate() {
            let s = dot(u, p);
            if s > offsets[i] {
                offsets[i] = s;
                contacts[i] = j;
            }
        }
    }
    let mut vertices = [Point::default(); 6];
    for (i, v) in vertices.iter_mut().enumerate() {
        let (a, b) = (hex_normal(i), hex_normal((i + 1) % 6));
        let (ha, hb) = (offsets[i], offsets[(i + 1) % 6]);
        let det = a.x * b.y - a.y * b.x;
        *v = Point::new((ha * b.y - hb * a.y) / det, (a.x * hb - b.x * ha) / det);
    }
    Ok(HexHull { offsets, vertices, contacts })
}

/// Checks that no point of `ps` lies in the interior of a reflected cap of
/// the component's hexagonal hull.
///
/// For each edge of positive length with contact point `x_i` (a component
/// vertex) and `r_i` the distance from `x_i` to its k-th nearest neighbour,
/// the cap `I_i` is `B(x_i, r_i) ∩ H` and `I_i'` its mirror image in the
/// edge line. A point `p` is counted as inside `I_i'` when
/// `|p - x_i| < r_i - CAP_SLACK` and the mirror of `p` lies inside `H` with
/// margin `CAP_SLACK`.
///
/// `component` lists vertices of `g` (built over `ps`) and `hull` must be
/// the hex hull of their points, in that order.
pub fn reflected_cap_empty(ps: &PointSet, component: &[usize], g: &NeighborGraph<'_>, hull: &HexHull) -> Result<bool> {
    if !matches!(g.model(), Model::Knn { .. }) {
        return Err(invalid("reflected caps need a k-NN graph"));
    }
    if g.vertex_count() != ps.len() {
        return Err(invalid("graph and point set sizes differ"));
    }
    if component.is_empty() {
        return Err(invalid("empty component"));
    }
    if let Some(&v) = component.iter().find(|&&v| v >= ps.len()) {
        return Err(invalid(format!("component vertex {v} out of range")));
    }
    if hull.contacts.iter().any(|&c| c >= component.len()) {
        return Err(invalid("hull contact index outside the component"));
    }
    let scale = hull.vertices.iter().map(|v| v.x.abs().max(v.y.abs())).fold(1.0, f64::max);
    for i in 0..6 {
        if hull.edge_length(i) <= 1e-12 * scale {
            continue;
        }
        let xv = component[hull.contacts[i]];
        let x = ps.point(xv);
        let r = kth_nn_radius(g, xv)?;
        let reach = r - CAP_SLACK;
        if reach <= 0.0 {
            continue;
        }
        let occupied = ps
            .points()
            .iter()
            .any(|&p| p.dist2(x) < reach * reach && hull.contains_strictly(hull.reflect(i, p), CAP_SLACK));
        if occupied {
            return Ok(false);
        }
    }
    Ok(true)
}
