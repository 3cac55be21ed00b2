//! Vertex connectivity by Menger's theorem.
//!
//! Local connectivity between two non-adjacent vertices is a unit-capacity
//! max flow on the vertex-split network: every vertex `u` becomes an arc
//! `u_in -> u_out` of capacity one, every undirected edge `{u, w}` becomes
//! arcs `u_out -> w_in` and `w_out -> u_in`. Augmenting paths are found by
//! BFS in the residual network and the flow is capped at the connectivity
//! being certified, so each local query costs at most `cap` searches.
//!
//! Global certification ([`connectivity_at_least`]) follows Even's scheme:
//! with vertices ordered `v_0, v_1, ...`, the graph is `s`-connected iff
//!
//! 1. every non-adjacent pair among `v_0..v_{s-1}` has local connectivity `>= s`, and
//! 2. for every `j >= s`, `s` internally disjoint paths join `v_j` to the set
//!    `{v_0, ..., v_{j-1}}` (equivalently, to an extra vertex adjacent to
//!    exactly that set).
//!
//! Ordering vertices breadth first keeps each `v_j` next to the already
//! processed set, so the searches in step 2 usually stop after a few hops.
//! Work arrays are reset sparsely between queries.
//!
//! [`vertex_connectivity_by_pairs`] is the independent Esfahanian–Hakimi
//! route (flows from a minimum-degree vertex to its non-neighbours and
//! between its non-adjacent neighbour pairs) and is kept for
//! cross-validation.

use std::collections::VecDeque;

use crate::graph::UndirectedGraph;

/// How a BFS node was reached.
#[derive(Clone, Copy, Debug)]
enum Step {
    /// `u_in -> u_out` forward on the vertex arc.
    VertexForward,
    /// `u_out -> u_in` cancelling vertex flow.
    VertexBackward,
    /// `u_out -> w_in` along arc index `a = (u -> w)`.
    EdgeForward(usize),
    /// `u_in -> w_out` cancelling flow on arc `a = (w -> u)`.
    EdgeBackward(usize),
}

struct FlowNetwork<'g> {
    graph: &'g UndirectedGraph,
    offset: Vec<usize>,
    /// For arc `u -> w` at position `offset[u] + i`, the position of `w -> u`.
    reverse: Vec<usize>,
    edge_flow: Vec<bool>,
    vertex_flow: Vec<bool>,
    sink_flow: Vec<bool>,
    touched_arcs: Vec<usize>,
    touched_vertices: Vec<usize>,
    epoch: u32,
    seen: Vec<u32>,
    parent: Vec<(usize, Step)>,
    queue: VecDeque<usize>,
}

/// Where an augmenting search terminates.
enum Target<'a> {
    /// Reaching `b_in`.
    Vertex(usize),
    /// Reaching `u_out` for any `u` with `rank[u] < limit` and free sink arc.
    Prefix { rank: &'a [usize], limit: usize },
}

impl<'g> FlowNetwork<'g> {
    fn new(graph: &'g UndirectedGraph) -> Self {
        let n = graph.vertex_count();
        let mut offset = Vec::with_capacity(n + 1);
        offset.push(0);
        for u in 0..n {
            offset.push(offset[u] + graph.degree(u));
        }
        let arcs = offset[n];
        let mut reverse = vec![0; arcs];
        for u in 0..n {
            for (i, &w) in graph.neighbors(u).iter().enumerate() {
                let back = graph.neighbors(w).binary_search(&u).expect("adjacency must be symmetric");
                reverse[offset[u] + i] = offset[w] + back;
            }
        }
        Self {
            graph,
            offset,
            reverse,
            edge_flow: vec![false; arcs],
            vertex_flow: vec![false; n],
            sink_flow: vec![false; n],
            touched_arcs: Vec::new(),
            touched_vertices: Vec::new(),
            epoch: 0,
            seen: vec![0; 2 * n],
            parent: vec![(0, Step::VertexForward); 2 * n],
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self) {
        for a in self.touched_arcs.drain(..) {
            self.edge_flow[a] = false;
        }
        for v in self.touched_vertices.drain(..) {
            self.vertex_flow[v] = false;
            self.sink_flow[v] = false;
        }
    }

    fn visit(&mut self, node: usize, from: usize, step: Step) -> bool {
        if self.seen[node] == self.epoch {
            return false;
        }
        self.seen[node] = self.epoch;
        self.parent[node] = (from, step);
        self.queue.push_back(node);
        true
    }

    /// Number of internally disjoint paths from `source` to the target, capped.
    fn max_flow(&mut self, source: usize, target: &Target<'_>, cap: usize) -> usize {
        let mut flow = 0;
        while flow < cap && self.augment(source, target) {
            flow += 1;
        }
        self.reset();
        flow
    }

    fn augment(&mut self, source: usize, target: &Target<'_>) -> bool {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.queue.clear();
        let (src_in, src_out) = (2 * source, 2 * source + 1);
        self.seen[src_in] = self.epoch;
        self.seen[src_out] = self.epoch;
        self.queue.push_back(src_out);

        while let Some(node) = self.queue.pop_front() {
            let u = node / 2;
            let base = self.offset[u];
            if node % 2 == 0 {
                // at u_in
                if !self.vertex_flow[u]
                    && self.visit(2 * u + 1, node, Step::VertexForward)
                    && self.is_sink_out(u, target)
                {
                    self.apply(2 * u + 1, src_out, true);
                    return true;
                }
                for (i, &w) in self.graph.neighbors(u).iter().enumerate() {
                    let back = self.reverse[base + i];
                    if self.edge_flow[back]
                        && self.visit(2 * w + 1, node, Step::EdgeBackward(back))
                        && self.is_sink_out(w, target)
                    {
                        self.apply(2 * w + 1, src_out, true);
                        return true;
                    }
                }
            } else {
                // at u_out
                if self.vertex_flow[u] {
                    self.visit(2 * u, node, Step::VertexBackward);
                }
                for (i, &w) in self.graph.neighbors(u).iter().enumerate() {
                    let arc = base + i;
                    if !self.edge_flow[arc] && self.visit(2 * w, node, Step::EdgeForward(arc)) {
                        if let Target::Vertex(b) = target {
                            if w == *b {
                                self.apply(2 * w, src_out, false);
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }

    /// `u_out` with a free arc into the contracted sink.
    fn is_sink_out(&self, u: usize, target: &Target<'_>) -> bool {
        match target {
            Target::Vertex(_) => false,
            Target::Prefix { rank, limit } => rank[u] < *limit && !self.sink_flow[u],
        }
    }

    /// Flips flows along the BFS tree path from `src_out` to `last`.
    fn apply(&mut self, last: usize, src_out: usize, through_sink_arc: bool) {
        if through_sink_arc {
            let u = last / 2;
            self.sink_flow[u] = true;
            self.touched_vertices.push(u);
        }
        let mut node = last;
        while node != src_out {
            let (prev, step) = self.parent[node];
            match step {
                Step::VertexForward => {
                    self.vertex_flow[node / 2] = true;
                    self.touched_vertices.push(node / 2);
                }
                Step::VertexBackward => self.vertex_flow[node / 2] = false,
                Step::EdgeForward(a) => {
                    self.edge_flow[a] = true;
                    self.touched_arcs.push(a);
                }
                Step::EdgeBackward(a) => self.edge_flow[a] = false,
            }
            node = prev;
        }
    }
}

/// Maximum number of internally vertex-disjoint paths between the
/// non-adjacent vertices `a` and `b`, capped at `cap`.
///
/// # Panics
/// If `a == b` or the two are adjacent.
pub fn local_connectivity(g: &UndirectedGraph, a: usize, b: usize, cap: usize) -> usize {
    assert!(a != b && !g.has_edge(a, b), "local connectivity needs distinct non-adjacent vertices");
    let mut net = FlowNetwork::new(g);
    net.max_flow(a, &Target::Vertex(b), cap)
}

fn is_connected_graph(g: &UndirectedGraph) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    bfs_order(g, 0).len() == n
}

fn bfs_order(g: &UndirectedGraph, root: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    seen[root] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

/// True iff the graph has more than `s` vertices and no vertex cut of size
/// smaller than `s`.
pub fn connectivity_at_least(g: &UndirectedGraph, s: usize) -> bool {
    let n = g.vertex_count();
    if s == 0 {
        return true;
    }
    if n <= s {
        return false;
    }
    if g.min_degree().unwrap_or(0) < s {
        return false;
    }
    if !is_connected_graph(g) {
        return false;
    }
    if s == 1 {
        return true;
    }

    let order = bfs_order(g, 0);
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut net = FlowNetwork::new(g);
    for i in 0..s {
        for j in i + 1..s {
            let (a, b) = (order[i], order[j]);
            if !g.has_edge(a, b)
                        && net.max_flow(a, &Target::Vertex(b), s) < s {
                    return false;
                }
        }
    }
    for (j, &v) in order.iter().enumerate().skip(s) {
        if net.max_flow(v, &Target::Prefix { rank: &rank, limit: j }, s) < s {
            return false;
        }
    }
    true
}

/// Largest `s` with [`connectivity_at_least`]; 0 for graphs with at most one
/// vertex or that are disconnected. `K_m` has connectivity `m - 1`.
pub fn vertex_connectivity(g: &UndirectedGraph) -> usize {
    let n = g.vertex_count();
    if n <= 1 || !is_connected_graph(g) {
        return 0;
    }
    let max = g.min_degree().unwrap_or(0);
    let mut s = 1;
    while s < max && connectivity_at_least(g, s + 1) {
        s += 1;
    }
    s
}

/// Vertex connectivity by the minimum-degree pair scheme.
pub fn vertex_connectivity_by_pairs(g: &UndirectedGraph) -> usize {
    let n = g.vertex_count();
    if n <= 1 {
        return 0;
    }
    let v = (0..n).min_by_key(|&u| (g.degree(u), u)).unwrap();
    let mut best = n - 1;
    let mut net = FlowNetwork::new(g);
    for w in 0..n {
        if w != v && !g.has_edge(v, w) {
            best = best.min(net.max_flow(v, &Target::Vertex(w), best));
        }
    }
    let nbrs = g.neighbors(v);
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if !g.has_edge(x, y) {
                best = best.min(net.max_flow(x, &Target::Vertex(y), best));
            }
        }
    }
    best
}
