//! Simple undirected graphs over `0..n`.

/// Undirected simple graph stored as sorted, deduplicated adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UndirectedGraph {
    adj: Vec<Vec<usize>>,
}

impl UndirectedGraph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Self-loops are dropped, duplicates merged.
    ///
    /// # Panics
    /// If an endpoint is `>= n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} vertices");
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        Self::from_raw_adjacency(adj)
    }

    /// Sorts and deduplicates raw symmetric adjacency lists.
    pub(crate) fn from_raw_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            debug_assert!(list.binary_search(&u).is_err());
        }
        Self { adj }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// True if every edge of `self` is an edge of `other` (same vertex labels).
    pub fn is_subgraph_of(&self, other: &UndirectedGraph) -> bool {
        self.vertex_count() <= other.vertex_count() && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    /// Induced subgraph on the vertices with `keep[v]`, relabelled in order.
    pub fn without_vertices(&self, removed: &[bool]) -> UndirectedGraph {
        let mut label = vec![usize::MAX; self.vertex_count()];
        let mut next = 0;
        for (v, &gone) in removed.iter().enumerate() {
            if !gone {
                label[v] = next;
                next += 1;
            }
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| !removed[u] && !removed[v])
            .map(|(u, v)| (label[u], label[v]));
        UndirectedGraph::from_edges(next, edges)
    }
}
