//! Closed-form distance invariants and theorem-level checkers.
//!
//! Covers 2-clique paths, linear 2-trees, trees, composition over blocks,
//! and graphs assembled from 2-clique-path blocks ([`BlockCliquePathRecipe`]).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{all_pairs_distances, build_cp_graph, GraphError, LabeledGraph};
use crate::linalg::{
    cofactor_sum, determinant, inertia_congruence, inertia_from_minors, leading_minors,
    reduced_cofactor_sum, Inertia, LinalgError,
};
use crate::matrix::IntMatrix;
use crate::reduction::{reduced_graph, seesaw_params};
use crate::sequence::{CliquePathSpec, NeighborhoodSequence, NonLeapingSequence, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("empty block list")]
    EmptyList,
    #[error("order {0} is below 2")]
    OrderTooSmall(usize),
    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// `det`, inertia and cofactor sum of a distance matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphInvariants {
    #[serde(with = "crate::io::decimal")]
    pub det: BigInt,
    pub inertia: Inertia,
    #[serde(with = "crate::io::decimal")]
    pub cof: BigInt,
}

impl GraphInvariants {
    /// Computed directly from a symmetric matrix.
    pub fn of_matrix(d: &IntMatrix) -> Result<Self, LinalgError> {
        Ok(Self {
            det: determinant(d),
            inertia: inertia_congruence(d)?,
            cof: cofactor_sum(d),
        })
    }

    /// Computed from the breadth-first distance matrix of `g`.
    pub fn of_graph(g: &LabeledGraph) -> Result<Self, FormulaError> {
        Ok(Self::of_matrix(&all_pairs_distances(g)?)?)
    }

    /// Whether `sign(det) = (-1)^{n_-}` (vacuous when `det = 0`).
    pub fn sign_consistent(&self) -> bool {
        self.det.is_zero() || self.det.is_negative() == (self.inertia.minus % 2 == 1)
    }
}

fn alternating(n: usize) -> BigInt {
    if n % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Invariants shared by every member of `CP(s)`, read off the reduced graph.
pub fn family_invariants(s: &NonLeapingSequence) -> GraphInvariants {
    let a = reduced_graph(s).adjacency_matrix();
    GraphInvariants {
        det: determinant(&a),
        inertia: inertia_congruence(&a).expect("weighted adjacency matrices are symmetric"),
        cof: reduced_cofactor_sum(&a).expect("sequences have length at least 2"),
    }
}

/// Closed forms for `CP(2:p_1,...,p_m)`.
pub fn cp2_invariants(spec: &CliquePathSpec) -> GraphInvariants {
    let n = spec.vertex_count();
    let params = seesaw_params(spec);
    let sign = alternating(n);
    GraphInvariants {
        det: &sign * BigInt::from(1 + params.left) * BigInt::from(1 + params.right),
        inertia: Inertia::new(1, n - 1, 0),
        cof: sign * BigInt::from(n),
    }
}

pub fn linear_2tree_invariants(n: usize) -> Result<GraphInvariants, FormulaError> {
    if n < 2 {
        return Err(FormulaError::OrderTooSmall(n));
    }
    let half_down = (n - 2) / 2;
    let half_up = (n - 1) / 2;
    let sign = alternating(n);
    Ok(GraphInvariants {
        det: &sign * BigInt::from(1 + half_down) * BigInt::from(1 + half_up),
        inertia: Inertia::new(1, n - 1, 0),
        cof: sign * BigInt::from(n),
    })
}

pub fn tree_invariants(n: usize) -> Result<GraphInvariants, FormulaError> {
    if n < 2 {
        return Err(FormulaError::OrderTooSmall(n));
    }
    let sign = alternating(n);
    let pow2 = BigInt::one() << (n - 2);
    let cof = num_traits::pow(BigInt::from(-2), n - 1);
    Ok(GraphInvariants {
        det: sign * BigInt::from(n - 1) * pow2,
        inertia: Inertia::new(1, n - 1, 0),
        cof,
    })
}

/// `(det, cof)` of a graph from those of its blocks:
/// `cof = prod cof_i` and `det = sum_i det_i prod_{j != i} cof_j`.
pub fn compose_blocks(parts: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt), FormulaError> {
    if parts.is_empty() {
        return Err(FormulaError::EmptyList);
    }
    let cof: BigInt = parts.iter().map(|(_, c)| c).product();
    let det = (0..parts.len())
        .map(|i| {
            parts
                .iter()
                .enumerate()
                .map(|(j, (d, c))| if i == j { d } else { c })
                .product::<BigInt>()
        })
        .sum();
    Ok((det, cof))
}

/// `max{n_+, n_-}`, the inertia lower bound on the addressing length.
pub fn addressing_lower_bound(inertia: Inertia) -> usize {
    inertia.plus.max(inertia.minus)
}

/// Where a block is glued onto the graph built so far.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Glue {
    /// Existing vertex of the graph built so far.
    pub vertex: usize,
    /// Vertex of the new block identified with `vertex`.
    #[serde(default = "one")]
    pub at: usize,
}

fn one() -> usize {
    1
}

/// One 2-clique-path block of a recipe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipePart {
    #[serde(with = "spec_literal")]
    pub spec: CliquePathSpec,
    /// Member of the family; the lexicographically first one when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchors: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub glue: Option<Glue>,
}

mod spec_literal {
    use super::CliquePathSpec;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(spec: &CliquePathSpec, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(spec)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CliquePathSpec, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Construction plan for a connected graph whose blocks are 2-clique paths.
/// The first part is the root block; each later part is glued at one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlockCliquePathRecipe {
    pub parts: Vec<RecipePart>,
}

/// A realized recipe: the graph and, per block, its maximal cliques in chain order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedRecipe {
    pub graph: LabeledGraph,
    pub blocks: Vec<Vec<BTreeSet<usize>>>,
}

impl BlockCliquePathRecipe {
    pub fn new(parts: Vec<RecipePart>) -> Self {
        Self { parts }
    }

    /// Convenience constructor: `(spec, glue_vertex)` pairs with first members.
    pub fn from_specs(parts: &[(CliquePathSpec, Option<usize>)]) -> Self {
        Self {
            parts: parts
                .iter()
                .map(|(spec, glue)| RecipePart {
                    spec: spec.clone(),
                    anchors: None,
                    glue: glue.map(|vertex| Glue { vertex, at: 1 }),
                })
                .collect(),
        }
    }

    pub fn realize(&self) -> Result<RealizedRecipe, FormulaError> {
        let invalid = |msg: String| FormulaError::InvalidRecipe(msg);
        if self.parts.is_empty() {
            return Err(invalid("no blocks".into()));
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut blocks = Vec::new();
        let mut n = 0usize;
        for (idx, part) in self.parts.iter().enumerate() {
            let s = part.spec.expand()?;
            let ns = match &part.anchors {
                Some(a) => NeighborhoodSequence::new(s, a.clone())?,
                None => NeighborhoodSequence::first(s),
            };
            let block = build_cp_graph(&ns);
            let size = block.vertex_count();
            let labels: Vec<usize> = match (&part.glue, idx) {
                (None, 0) => (1..=size).collect(),
                (Some(_), 0) => return Err(invalid("the root block cannot be glued".into())),
                (None, _) => return Err(invalid(format!("block {} has no glue", idx + 1))),
                (Some(g), _) => {
                    if g.vertex == 0 || g.vertex > n {
                        return Err(invalid(format!("glue vertex {} does not exist", g.vertex)));
                    }
                    if g.at == 0 || g.at > size {
                        return Err(invalid(format!("glue position {} outside the block", g.at)));
                    }
                    let mut fresh = n;
                    (1..=size)
                        .map(|v| {
                            if v == g.at {
                                g.vertex
                            } else {
                                fresh += 1;
                                fresh
                            }
                        })
                        .collect()
                }
            };
            n += if idx == 0 { size } else { size - 1 };
            edges.extend(block.edges().into_iter().map(|(u, v)| (labels[u - 1], labels[v - 1])));
            blocks.push(block_cliques(&ns, &part.spec, &labels));
        }
        let graph = LabeledGraph::from_edges(n, &edges)?;
        Ok(RealizedRecipe { graph, blocks })
    }
}

/// Maximal cliques `W_e ∪ {e}` at the last vertex `e` of each clique of the chain.
fn block_cliques(
    ns: &NeighborhoodSequence,
    spec: &CliquePathSpec,
    labels: &[usize],
) -> Vec<BTreeSet<usize>> {
    if spec.parts().is_empty() {
        return vec![[labels[0], labels[1]].into_iter().collect()];
    }
    let mut last = 2;
    spec.parts()
        .iter()
        .map(|&p| {
            last += p - 2;
            ns.neighborhood(last)
                .into_iter()
                .chain(std::iter::once(last))
                .map(|v| labels[v - 1])
                .collect()
        })
        .collect()
}

/// Ordering `v_1, ..., v_n` in which every prefix induces a connected graph
/// whose blocks are 2-clique paths, with distances inherited from the whole
/// graph. Vertices are peeled from the back: each step removes the
/// largest-labelled non-cut vertex lying only in an end clique of a pendant
/// block.
pub fn peel_ordering(recipe: &BlockCliquePathRecipe) -> Result<Vec<usize>, FormulaError> {
    let realized = recipe.realize()?;
    Ok(peel_realized(&realized))
}

fn peel_realized(realized: &RealizedRecipe) -> Vec<usize> {
    let n = realized.graph.vertex_count();
    let mut blocks = realized.blocks.clone();
    let mut alive: BTreeSet<usize> = (1..=n).collect();
    let mut removed = Vec::new();

    while alive.len() > 2 {
        let mut membership = vec![0usize; n + 1];
        let vertex_sets: Vec<BTreeSet<usize>> = blocks
            .iter()
            .map(|cliques| cliques.iter().flatten().copied().collect())
            .collect();
        for set in &vertex_sets {
            for &v in set {
                membership[v] += 1;
            }
        }
        let is_cut = |v: usize| membership[v] > 1;
        let mut best: Option<(usize, usize)> = None;
        for (bi, cliques) in blocks.iter().enumerate() {
            let cuts = vertex_sets[bi].iter().filter(|&&v| is_cut(v)).count();
            if blocks.len() > 1 && cuts > 1 {
                continue;
            }
            let candidates: Vec<usize> = match cliques.len() {
                1 => cliques[0].iter().copied().collect(),
                m => cliques[0]
                    .difference(&cliques[1])
                    .chain(cliques[m - 1].difference(&cliques[m - 2]))
                    .copied()
                    .collect(),
            };
            for v in candidates.into_iter().filter(|&v| !is_cut(v)) {
                if best.map_or(true, |(b, _)| v > b) {
                    best = Some((v, bi));
                }
            }
        }
        let (v, bi) = best.expect("a pendant block always has a removable vertex");
        let cliques = &mut blocks[bi];
        for c in cliques.iter_mut() {
            c.remove(&v);
        }
        // Drop cliques swallowed by a neighbour; a lone vertex ends the block.
        let snapshot = cliques.clone();
        let mut kept: Vec<BTreeSet<usize>> = Vec::new();
        for (i, c) in snapshot.iter().enumerate() {
            let swallowed = snapshot
                .iter()
                .enumerate()
                .any(|(j, d)| j != i && c.is_subset(d) && (c != d || j < i));
            if !swallowed {
                kept.push(c.clone());
            }
        }
        if kept.len() == 1 && kept[0].len() <= 1 {
            blocks.remove(bi);
        } else {
            *cliques = kept;
        }
        alive.remove(&v);
        removed.push(v);
    }
    let mut order: Vec<usize> = alive.into_iter().collect();
    order.extend(removed.into_iter().rev());
    order
}

/// Peel ordering with the leading principal minors of `D(G)` in that order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeelMinors {
    pub ordering: Vec<usize>,
    #[serde(with = "crate::io::decimal_vec")]
    pub minors: Vec<BigInt>,
}

pub fn peel_leading_minors(recipe: &BlockCliquePathRecipe) -> Result<PeelMinors, FormulaError> {
    let realized = recipe.realize()?;
    let ordering = peel_realized(&realized);
    let d = all_pairs_distances(&realized.graph)?;
    let idx: Vec<usize> = ordering.iter().map(|v| v - 1).collect();
    let minors = leading_minors(&d.permuted(&idx));
    Ok(PeelMinors { ordering, minors })
}

/// `(1, n-1, 0)`, confirmed by the leading-minor sign pattern along the peel
/// ordering (`0` then `(-1)^{k-1}`) and the sign-change count.
pub fn block_2cp_inertia(recipe: &BlockCliquePathRecipe) -> Result<Inertia, FormulaError> {
    let PeelMinors { minors, .. } = peel_leading_minors(recipe)?;
    let n = minors.len();
    let expected = Inertia::new(1, n - 1, 0);
    for (i, d) in minors.iter().enumerate() {
        let k = i + 1;
        let ok = if k == 1 {
            d.is_zero()
        } else {
            !d.is_zero() && d.is_negative() == (k % 2 == 0)
        };
        if !ok {
            return Err(FormulaError::CrossCheckFailed(format!(
                "leading minor D_{k} = {d} has the wrong sign"
            )));
        }
    }
    let computed = inertia_from_minors(&minors)?;
    if computed != expected {
        return Err(FormulaError::CrossCheckFailed(format!(
            "leading minors give {computed}, expected {expected}"
        )));
    }
    Ok(expected)
}
