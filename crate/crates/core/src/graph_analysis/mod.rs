//! Connectivity, component geometry and vertex connectivity.

mod menger;
mod union_find;

pub use menger::{local_connectivity, vertex_connectivity_by_pairs};
pub use union_find::UnionFind;

use crate::geometry::{bounding_box, point_set_diameter};
use crate::graph::UndirectedGraph;
use crate::knn_graph::NeighborGraph;
use crate::point_process::Point;

/// Anything that exposes an undirected adjacency.
pub trait AsGraph {
    fn as_graph(&self) -> &UndirectedGraph;
}

impl AsGraph for UndirectedGraph {
    fn as_graph(&self) -> &UndirectedGraph {
        self
    }
}

impl AsGraph for NeighborGraph<'_> {
    fn as_graph(&self) -> &UndirectedGraph {
        self.graph()
    }
}

/// One connected component.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    /// Vertices in increasing order.
    pub vertices: Vec<usize>,
    /// Largest Euclidean distance between two of its points.
    pub diameter: f64,
    /// Axis-aligned bounding box `(min, max)`.
    pub bbox: (Point, Point),
}

impl Component {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Partition of the vertices into connected components. Component ids are
/// assigned in order of each component's smallest vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentDecomposition {
    component_of: Vec<usize>,
    components: Vec<Component>,
}

impl ComponentDecomposition {
    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Component id per vertex (ids by smallest vertex) and the number of components.
pub fn component_labels(g: &UndirectedGraph) -> (Vec<usize>, usize) {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for (u, v) in g.edges() {
        uf.union(u, v);
    }
    let mut id_of_root = vec![usize::MAX; n];
    let mut labels = vec![0; n];
    let mut next = 0;
    for v in 0..n {
        let r = uf.find(v);
        if id_of_root[r] == usize::MAX {
            id_of_root[r] = next;
            next += 1;
        }
        labels[v] = id_of_root[r];
    }
    (labels, next)
}

/// Decomposition of `g` with geometry taken from `points`.
pub fn decompose(g: &UndirectedGraph, points: &[Point]) -> ComponentDecomposition {
    assert_eq!(g.vertex_count(), points.len());
    let (component_of, count) = component_labels(g);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (v, &c) in component_of.iter().enumerate() {
        members[c].push(v);
    }
    let components = members
        .into_iter()
        .map(|vertices| {
            let pts: Vec<Point> = vertices.iter().map(|&v| points[v]).collect();
            Component {
                diameter: point_set_diameter(&pts),
                bbox: bounding_box(pts.iter().copied()).expect("components are nonempty"),
                vertices,
            }
        })
        .collect();
    ComponentDecomposition { component_of, components }
}

pub fn connected_components(g: &NeighborGraph<'_>) -> ComponentDecomposition {
    decompose(g.graph(), g.points().points())
}

/// At most one component; graphs with 0 or 1 vertices count as connected.
pub fn is_connected(g: &impl AsGraph) -> bool {
    let g = g.as_graph();
    g.vertex_count() <= 1 || component_labels(g).1 == 1
}

pub fn isolated_vertices(g: &impl AsGraph) -> Vec<usize> {
    let g = g.as_graph();
    (0..g.vertex_count()).filter(|&v| g.degree(v) == 0).collect()
}

/// More than `s` vertices and no vertex cut of fewer than `s` vertices.
pub fn is_s_connected(g: &impl AsGraph, s: usize) -> bool {
    assert!(s >= 1, "s must be >= 1");
    menger::connectivity_at_least(g.as_graph(), s)
}

/// Largest `s` with [`is_s_connected`]; 0 if disconnected or `m <= 1`.
pub fn vertex_connectivity(g: &impl AsGraph) -> usize {
    menger::vertex_connectivity(g.as_graph())
}
