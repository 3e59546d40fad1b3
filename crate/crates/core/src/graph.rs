//! Simple undirected graphs on vertices `1..=n`, CP-graph construction,
//! breadth-first distances, edge attachment and block decomposition.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::sequence::NeighborhoodSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {{{0}, {1}}} is not in the base graph")]
    EdgeNotInBase(usize, usize),
    #[error("attached graph must contain the edge {{1, 2}}")]
    NotAttachable,
}

/// Simple undirected graph with 1-based vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl LabeledGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.insert(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 2..=n {
            g.insert(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.insert(1, n);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Adds `{u, v}`, rejecting loops, duplicates and unknown vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert(u, v);
        Ok(())
    }

    fn insert(&mut self, u: usize, v: usize) {
        self.adj[u - 1].insert(v);
        self.adj[v - 1].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.adj.len() && self.adj[u - 1].contains(&v)
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v - 1].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, nb)| {
                let u = i + 1;
                nb.range(u + 1..).map(move |&v| (u, v))
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n == 0 || self.bfs(1).iter().all(Option::is_some)
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        self.bfs_within(source, self.vertex_count())
    }

    /// BFS that only visits vertices with label `<= limit`.
    pub fn bfs_within(&self, source: usize, limit: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source - 1] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u - 1].unwrap_or(0);
            for v in self.neighbors(u) {
                if v <= limit && dist[v - 1].is_none() {
                    dist[v - 1] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs distances as plain integers, `result[i][j]` for vertices `i+1, j+1`.
    pub fn distances(&self) -> Result<Vec<Vec<usize>>, GraphError> {
        (1..=self.vertex_count())
            .map(|s| {
                self.bfs(s)
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or(GraphError::Disconnected)
            })
            .collect()
    }

    /// Subgraph induced on `vertices`; vertex `vertices[i]` becomes `i + 1`.
    pub fn induced(&self, vertices: &[usize]) -> LabeledGraph {
        let mut pos = vec![0usize; self.vertex_count() + 1];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i + 1;
        }
        let mut g = LabeledGraph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for v in self.neighbors(u) {
                let j = pos[v];
                if j > i + 1 {
                    g.insert(i + 1, j);
                }
            }
        }
        g
    }

    /// Applies a relabeling: vertex `v` becomes `map[v - 1]`.
    pub fn relabel(&self, map: &[usize]) -> LabeledGraph {
        let mut g = LabeledGraph::empty(self.vertex_count());
        for (u, v) in self.edges() {
            g.insert(map[u - 1], map[v - 1]);
        }
        g
    }
}

/// Joins each vertex `k` to its backward neighborhood `W_k`.
pub fn build_cp_graph(ns: &NeighborhoodSequence) -> LabeledGraph {
    let n = ns.len();
    let mut g = LabeledGraph::empty(n);
    for k in 2..=n {
        for w in ns.neighborhood(k) {
            g.insert(w, k);
        }
    }
    g
}

/// The distance matrix `D(G)`.
pub fn all_pairs_distances(g: &LabeledGraph) -> Result<IntMatrix, GraphError> {
    let d = g.distances()?;
    Ok(IntMatrix::from_fn(g.vertex_count(), |i, j| BigInt::from(d[i][j])))
}

/// Result of `base ⊕_e cp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attachment {
    pub graph: LabeledGraph,
    /// `cp_labels[i - 1]` is the label of cp-vertex `i` in `graph`.
    pub cp_labels: Vec<usize>,
}

/// Glues `cp` onto `base` by identifying `edge.0` with cp-vertex 1 and
/// `edge.1` with cp-vertex 2. Base labels are kept; cp-vertices `3..=n`
/// become `n_0 + 1..=n_0 + n - 2`.
pub fn attach(
    base: &LabeledGraph,
    edge: (usize, usize),
    cp: &LabeledGraph,
) -> Result<Attachment, GraphError> {
    let (v1, v2) = edge;
    if !base.has_edge(v1, v2) {
        return Err(GraphError::EdgeNotInBase(v1, v2));
    }
    if !cp.has_edge(1, 2) {
        return Err(GraphError::NotAttachable);
    }
    let n0 = base.vertex_count();
    let n = cp.vertex_count();
    let cp_labels: Vec<usize> = (1..=n)
        .map(|i| match i {
            1 => v1,
            2 => v2,
            _ => n0 + i - 2,
        })
        .collect();
    let mut graph = LabeledGraph::empty(n0 + n - 2);
    for (u, v) in base.edges() {
        graph.insert(u, v);
    }
    for (u, v) in cp.edges() {
        if (u, v) != (1, 2) {
            graph.insert(cp_labels[u - 1], cp_labels[v - 1]);
        }
    }
    Ok(Attachment { graph, cp_labels })
}

/// A block of a graph together with its original vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Original labels, ascending; vertex `i` of `graph` is `vertices[i - 1]`.
    pub vertices: Vec<usize>,
    pub graph: LabeledGraph,
}

/// Biconnected components via the articulation-point edge-stack method.
/// Blocks are returned sorted by their vertex lists.
pub fn blocks(g: &LabeledGraph) -> Result<Vec<Block>, GraphError> {
    let n = g.vertex_count();
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if n == 1 {
        return Ok(vec![Block {
            vertices: vec![1],
            graph: LabeledGraph::empty(1),
        }]);
    }
    let neighbors: Vec<Vec<usize>> = (1..=n).map(|v| g.neighbors(v).collect()).collect();
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut found: Vec<Vec<usize>> = Vec::new();

    // Explicit DFS stack of (vertex, parent, next neighbor index).
    timer += 1;
    disc[1] = timer;
    low[1] = timer;
    let mut stack: Vec<(usize, usize, usize)> = vec![(1, 0, 0)];
    while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
        if *idx < neighbors[u - 1].len() {
            let v = neighbors[u - 1][*idx];
            *idx += 1;
            if disc[v] == 0 {
                edge_stack.push((u, v));
                timer += 1;
                disc[v] = timer;
                low[v] = timer;
                stack.push((v, u, 0));
            } else if v != parent && disc[v] < disc[u] {
                edge_stack.push((u, v));
                low[u] = low[u].min(disc[v]);
            }
        } else {
            stack.pop();
            if parent != 0 {
                low[parent] = low[parent].min(low[u]);
                if low[u] >= disc[parent] {
                    let mut comp = BTreeSet::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        comp.insert(a);
                        comp.insert(b);
                        if (a, b) == (parent, u) {
                            break;
                        }
                    }
                    found.push(comp.into_iter().collect());
                }
            }
        }
    }
    found.sort();
    Ok(found
        .into_iter()
        .map(|vertices| {
            let graph = g.induced(&vertices);
            Block { vertices, graph }
        })
        .collect())
}

/// Vertices that lie in more than one block.
pub fn cut_vertices(g: &LabeledGraph) -> Result<Vec<usize>, GraphError> {
    let mut count = vec![0usize; g.vertex_count() + 1];
    for b in blocks(g)? {
        for v in b.vertices {
            count[v] += 1;
        }
    }
    Ok((1..=g.vertex_count()).filter(|&v| count[v] > 1).collect())
}

/// Edge-list view used by JSON I/O.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&LabeledGraph> for GraphRecord {
    fn from(g: &LabeledGraph) -> Self {
        GraphRecord {
            n: g.vertex_count(),
            edges: g.edges(),
        }
    }
}

impl TryFrom<GraphRecord> for LabeledGraph {
    type Error = GraphError;

    fn try_from(r: GraphRecord) -> Result<Self, Self::Error> {
        LabeledGraph::from_edges(r.n, &r.edges)
    }
}
