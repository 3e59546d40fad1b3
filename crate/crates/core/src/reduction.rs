//! Reduced graphs, reducing matrices and the congruence `E^T D E`.
//!
//! For every member of `CP(s)` the product `E^T D E` of the reducing matrix
//! and the distance matrix equals the weighted adjacency matrix of the
//! reduced graph of `s`. For clique-path sequences the reduced graph is a
//! seesaw graph: two weight-0 vertices with two weight-(-2) paths hanging off
//! vertex 2.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::linalg::LinalgError;
use crate::matrix::IntMatrix;
use crate::sequence::{CliquePathSpec, NeighborhoodSequence, NonLeapingSequence};

/// Integer-weighted graph on `1..=n`. Edges with zero weight are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "WeightedGraphRecord", try_from = "WeightedGraphRecord")]
pub struct WeightedGraph {
    vertex_weights: Vec<i64>,
    edge_weights: BTreeMap<(usize, usize), i64>,
}

impl WeightedGraph {
    pub fn new(vertex_weights: Vec<i64>) -> Self {
        Self {
            vertex_weights,
            edge_weights: BTreeMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn vertex_weight(&self, v: usize) -> i64 {
        self.vertex_weights[v - 1]
    }

    pub fn vertex_weights(&self) -> &[i64] {
        &self.vertex_weights
    }

    /// Weight of `{u, v}`, zero for a nonedge.
    pub fn edge_weight(&self, u: usize, v: usize) -> i64 {
        self.edge_weights
            .get(&(u.min(v), u.max(v)))
            .copied()
            .unwrap_or(0)
    }

    /// Edges `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.edge_weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    /// Adds `w` to the weight of `{u, v}`; the edge disappears if the sum is zero.
    pub fn add_to_edge(&mut self, u: usize, v: usize, w: i64) {
        let key = (u.min(v), u.max(v));
        let entry = self.edge_weights.entry(key).or_insert(0);
        *entry += w;
        if *entry == 0 {
            self.edge_weights.remove(&key);
        }
    }

    /// Neighbors of `v`, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edge_weights
            .keys()
            .filter_map(|&(a, b)| match () {
                _ if a == v => Some(b),
                _ if b == v => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut a = IntMatrix::zeros(n);
        for (i, &w) in self.vertex_weights.iter().enumerate() {
            a[(i, i)] = BigInt::from(w);
        }
        for (u, v, w) in self.edges() {
            a.set_sym(u - 1, v - 1, BigInt::from(w));
        }
        a
    }

    /// Vertex `v` becomes `map[v - 1]`.
    pub fn relabel(&self, map: &[usize]) -> WeightedGraph {
        let mut vw = vec![0; self.vertex_count()];
        for (i, &w) in self.vertex_weights.iter().enumerate() {
            vw[map[i] - 1] = w;
        }
        let mut g = WeightedGraph::new(vw);
        for (u, v, w) in self.edges() {
            g.add_to_edge(map[u - 1], map[v - 1], w);
        }
        g
    }
}

/// JSON shape `{"n": N, "vw": [..], "ew": [[u, v, w], ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedGraphRecord {
    pub n: usize,
    pub vw: Vec<i64>,
    pub ew: Vec<(usize, usize, i64)>,
}

impl From<WeightedGraph> for WeightedGraphRecord {
    fn from(g: WeightedGraph) -> Self {
        WeightedGraphRecord {
            n: g.vertex_count(),
            ew: g.edges().collect(),
            vw: g.vertex_weights,
        }
    }
}

impl TryFrom<WeightedGraphRecord> for WeightedGraph {
    type Error = String;

    fn try_from(r: WeightedGraphRecord) -> Result<Self, Self::Error> {
        if r.vw.len() != r.n {
            return Err(format!("expected {} vertex weights, got {}", r.n, r.vw.len()));
        }
        let mut g = WeightedGraph::new(r.vw);
        for (u, v, w) in r.ew {
            if u == v || u == 0 || v == 0 || u > r.n || v > r.n {
                return Err(format!("invalid weighted edge ({u}, {v})"));
            }
            if g.edge_weight(u, v) != 0 {
                return Err(format!("duplicate weighted edge ({u}, {v})"));
            }
            g.add_to_edge(u, v, w);
        }
        Ok(g)
    }
}

pub fn reduced_graph(s: &NonLeapingSequence) -> WeightedGraph {
    let n = s.len();
    let weights = (1..=n).map(|k| if k <= 2 { 0 } else { -2 }).collect();
    let mut h = WeightedGraph::new(weights);
    h.add_to_edge(1, 2, 1);
    for k in 3..=n {
        let mut local: BTreeMap<usize, i64> = BTreeMap::new();
        *local.entry(s.b(k - 1)).or_default() += 1;
        *local.entry(s.b(k)).or_default() -= 1;
        *local.entry(k - 1).or_default() += 1;
        for (u, w) in local {
            if w != 0 {
                h.add_to_edge(u, k, w);
            }
        }
    }
    h
}

/// Columns `e_1`, `e_2`, then `e_k - e_{a_k} - e_{k-1} + e_{a_{k-1}}`.
pub fn reducing_matrix(ns: &NeighborhoodSequence) -> IntMatrix {
    let n = ns.len();
    let mut e = IntMatrix::identity(n);
    for k in 3..=n {
        let col = k - 1;
        e[(ns.anchor(k) - 1, col)] -= 1;
        e[(k - 2, col)] -= 1;
        e[(ns.anchor(k - 1) - 1, col)] += 1;
    }
    e
}

/// `E^T D E`, exactly.
pub fn congruence_reduce(d: &IntMatrix, e: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if d.order() != e.order() {
        return Err(LinalgError::DimensionMismatch(d.order(), e.order()));
    }
    let de = d.mul(e).expect("orders checked");
    Ok(e.transpose().mul(&de).expect("orders checked"))
}

/// `A(P^{-2}_n)`: tridiagonal with -2 on the diagonal and 1 beside it.
pub fn weighted_path_matrix(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, |i, j| match i.abs_diff(j) {
        0 => BigInt::from(-2),
        1 => BigInt::from(1),
        _ => BigInt::from(0),
    })
}

/// Lengths of the two weighted paths of a seesaw graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeesawParams {
    pub left: usize,
    pub right: usize,
}

impl SeesawParams {
    pub fn vertex_count(&self) -> usize {
        2 + self.left + self.right
    }
}

/// Odd-position and even-position sums of `p_k - 2`.
pub fn seesaw_params(spec: &CliquePathSpec) -> SeesawParams {
    let (mut left, mut right) = (0, 0);
    for (i, &p) in spec.parts().iter().enumerate() {
        if i % 2 == 0 {
            left += p - 2;
        } else {
            right += p - 2;
        }
    }
    SeesawParams { left, right }
}

/// `S_{l,r}`: left path on `3..=2+l`, right path on `3+l..=2+l+r`, both
/// starting next to vertex 2.
pub fn seesaw_graph(params: SeesawParams) -> WeightedGraph {
    let SeesawParams { left, right } = params;
    let n = params.vertex_count();
    let weights = (1..=n).map(|k| if k <= 2 { 0 } else { -2 }).collect();
    let mut g = WeightedGraph::new(weights);
    g.add_to_edge(1, 2, 1);
    for (start, len) in [(3, left), (3 + left, right)] {
        let mut prev = 2;
        for v in start..start + len {
            g.add_to_edge(prev, v, 1);
            prev = v;
        }
    }
    g
}

/// Vertex map from the reduced graph of `spec` onto `S_{l,r}`: the new
/// vertices of odd-position cliques, in order, form the left path and those
/// of even-position cliques form the right path.
pub fn seesaw_relabeling(spec: &CliquePathSpec) -> Vec<usize> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut next = 3;
    for (i, &p) in spec.parts().iter().enumerate() {
        let block = next..next + p - 2;
        next += p - 2;
        if i % 2 == 0 {
            left.extend(block);
        } else {
            right.extend(block);
        }
    }
    let mut map = vec![0; next - 1];
    map[0] = 1;
    map[1] = 2;
    for (i, &v) in left.iter().chain(&right).enumerate() {
        map[v - 1] = 3 + i;
    }
    map
}

/// Checks the reduced graph of `spec` against its seesaw graph under
/// [`seesaw_relabeling`].
pub fn reduced_is_seesaw(spec: &CliquePathSpec) -> bool {
    let s = spec.expand().expect("clique-path specs always expand");
    let relabeled = reduced_graph(&s).relabel(&seesaw_relabeling(spec));
    relabeled == seesaw_graph(seesaw_params(spec))
}
