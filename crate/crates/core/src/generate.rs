//! Exhaustive and seeded random generators for test inputs.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formulas::{BlockCliquePathRecipe, Glue, RecipePart};
use crate::graph::LabeledGraph;
use crate::matrix::IntMatrix;
use crate::sequence::{admissible_anchors, CliquePathSpec, NeighborhoodSequence, NonLeapingSequence};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every non-leaping sequence of length `n` (`n >= 2`), lexicographically.
pub fn all_nonleaping(n: usize) -> Vec<NonLeapingSequence> {
    if n < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut q = vec![0, 1];
    extend_nonleaping(&mut q, n, &mut out);
    out
}

fn extend_nonleaping(q: &mut Vec<usize>, n: usize, out: &mut Vec<NonLeapingSequence>) {
    if q.len() == n {
        out.push(NonLeapingSequence::new(q.clone()).expect("generated sequences are valid"));
        return;
    }
    let top = q[q.len() - 1] + 1;
    for next in 2..=top {
        q.push(next);
        extend_nonleaping(q, n, out);
        q.pop();
    }
}

pub fn random_nonleaping<R: Rng>(rng: &mut R, n: usize) -> NonLeapingSequence {
    let mut q = vec![0, 1];
    while q.len() < n.max(2) {
        let top = q[q.len() - 1] + 1;
        q.push(rng.gen_range(2..=top));
    }
    q.truncate(n.max(2));
    NonLeapingSequence::new(q).expect("generated sequences are valid")
}

/// A uniformly chosen anchor at every step.
pub fn random_member<R: Rng>(rng: &mut R, s: &NonLeapingSequence) -> NeighborhoodSequence {
    let mut anchors = Vec::new();
    for k in 3..=s.len() {
        let opts = admissible_anchors(s, k, &anchors).expect("k is in range");
        anchors.push(*opts.choose(rng).expect("anchor choices are nonempty"));
    }
    NeighborhoodSequence::new(s.clone(), anchors).expect("generated anchors are admissible")
}

/// The labeled tree with Prüfer code `code` on `code.len() + 2` vertices.
pub fn prufer_decode(code: &[usize]) -> LabeledGraph {
    let n = code.len() + 2;
    let mut degree = vec![1usize; n + 1];
    for &c in code {
        degree[c] += 1;
    }
    let mut g = LabeledGraph::empty(n);
    let mut leaves: std::collections::BTreeSet<usize> =
        (1..=n).filter(|&v| degree[v] == 1).collect();
    for &c in code {
        let leaf = leaves.pop_first().expect("a tree always has a leaf");
        g.add_edge(leaf, c).expect("Prüfer decoding yields a simple graph");
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    g.add_edge(last[0], last[1]).expect("Prüfer decoding yields a simple graph");
    g
}

/// All `n^{n-2}` labeled trees on `n >= 2` vertices.
pub fn all_labeled_trees(n: usize) -> Vec<LabeledGraph> {
    if n < 2 {
        return Vec::new();
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut idx| {
            let code: Vec<usize> = (0..len)
                .map(|_| {
                    let c = idx % n + 1;
                    idx /= n;
                    c
                })
                .collect();
            prufer_decode(&code)
        })
        .collect()
}

/// A random spanning tree plus each remaining pair independently with probability `p`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> LabeledGraph {
    let mut g = if n >= 2 {
        let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
        prufer_decode(&code)
    } else {
        LabeledGraph::empty(n)
    };
    for u in 1..=n {
        for v in u + 1..=n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).expect("pair is new");
            }
        }
    }
    g
}

pub fn random_clique_path_spec<R: Rng>(rng: &mut R, max_parts: usize, max_p: usize) -> CliquePathSpec {
    let m = rng.gen_range(0..=max_parts);
    let parts = (0..m).map(|_| rng.gen_range(3..=max_p.max(3))).collect();
    CliquePathSpec::new(parts).expect("parts are at least 3")
}

/// A random block-2CP recipe on at most `max_n` vertices (`max_n >= 2`).
pub fn random_recipe<R: Rng>(rng: &mut R, max_n: usize) -> BlockCliquePathRecipe {
    let mut parts = Vec::new();
    let mut n = 0usize;
    loop {
        let room = if parts.is_empty() { max_n } else { max_n - n + 1 };
        if room < 2 {
            break;
        }
        let mut pieces = Vec::new();
        let mut size = 2;
        let m = rng.gen_range(0..=3);
        for _ in 0..m {
            let p = rng.gen_range(3..=5);
            if size + p - 2 > room {
                break;
            }
            size += p - 2;
            pieces.push(p);
        }
        let spec = CliquePathSpec::new(pieces).expect("parts are at least 3");
        let member = random_member(rng, &spec.expand().expect("valid spec"));
        let glue = if parts.is_empty() {
            None
        } else {
            Some(Glue {
                vertex: rng.gen_range(1..=n),
                at: rng.gen_range(1..=size),
            })
        };
        n += if parts.is_empty() { size } else { size - 1 };
        parts.push(RecipePart {
            spec,
            anchors: Some(member.anchors().to_vec()),
            glue,
        });
        if rng.gen_bool(0.25) {
            break;
        }
    }
    BlockCliquePathRecipe::new(parts)
}

/// Symmetric matrix with independent uniform entries in `lo..=hi`.
pub fn random_symmetric<R: Rng>(rng: &mut R, order: usize, lo: i64, hi: i64) -> IntMatrix {
    let mut a = IntMatrix::zeros(order);
    for i in 0..order {
        for j in i..order {
            a.set_sym(i, j, BigInt::from(rng.gen_range(lo..=hi)));
        }
    }
    a
}

/// Upper unitriangular matrix with entries in `-2..=2` above the diagonal.
pub fn random_unit_upper<R: Rng>(rng: &mut R, order: usize) -> IntMatrix {
    IntMatrix::from_fn(order, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => BigInt::from(1),
        std::cmp::Ordering::Less => BigInt::from(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Greater => BigInt::from(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::blocks;

    #[test]
    fn nonleaping_counts_are_catalan() {
        // sequences of length n are counted by the Catalan number C_{n-2}
        let counts: Vec<usize> = (2..=8).map(|n| all_nonleaping(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn prufer_trees() {
        assert_eq!(all_labeled_trees(2), vec![LabeledGraph::path(2)]);
        for n in 2..=6 {
            let trees = all_labeled_trees(n);
            assert_eq!(trees.len(), n.pow(n as u32 - 2));
            for t in &trees {
                assert_eq!(t.edge_count(), n - 1);
                assert!(t.is_connected());
            }
            let distinct: std::collections::BTreeSet<_> =
                trees.iter().map(|t| t.edges()).collect();
            assert_eq!(distinct.len(), trees.len());
        }
    }

    #[test]
    fn random_generators_are_reproducible() {
        let a = random_connected_graph(&mut seeded_rng(7), 6, 0.3);
        let b = random_connected_graph(&mut seeded_rng(7), 6, 0.3);
        assert_eq!(a, b);
        assert!(a.is_connected());
        let s = random_nonleaping(&mut seeded_rng(3), 9);
        assert_eq!(s.len(), 9);
        let m = random_member(&mut seeded_rng(3), &s);
        assert_eq!(m.anchors().len(), 7);
    }

    #[test]
    fn random_recipes_realize() {
        let mut rng = seeded_rng(11);
        for _ in 0..50 {
            let r = random_recipe(&mut rng, 12);
            let real = r.realize().unwrap();
            let n = real.graph.vertex_count();
            assert!((2..=12).contains(&n));
            assert!(real.graph.is_connected());
            assert_eq!(blocks(&real.graph).unwrap().len(), r.parts.len());
        }
    }

    #[test]
    fn unit_upper_has_det_one() {
        let u = random_unit_upper(&mut seeded_rng(1), 5);
        assert_eq!(crate::linalg::determinant(&u), BigInt::from(1));
    }
}
