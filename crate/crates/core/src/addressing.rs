//! Squashed-cube addressing schemes over `{0, 1, *}` and exhaustive search
//! for the minimum address length `N(G)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::addressing_lower_bound;
use crate::graph::{all_pairs_distances, GraphError, LabeledGraph};
use crate::linalg::{inertia_congruence, LinalgError};

/// Largest vertex count accepted by [`search_scheme`] and [`exact_n`].
pub const MAX_SEARCH_VERTICES: usize = 6;

/// Default node budget per first-vertex branch.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AddressError {
    #[error("addresses have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("scheme has {got} addresses for {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid address symbol {0:?}")]
    InvalidSymbol(char),
    #[error("graph has {0} vertices; search is limited to {MAX_SEARCH_VERTICES}")]
    TooLarge(usize),
    #[error("search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),
    #[error("no scheme of length at most {0} was found")]
    NotFound(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// One address per vertex, in label order, each of length `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddressScheme {
    pub d: usize,
    #[serde(rename = "addr")]
    pub addresses: Vec<String>,
}

impl AddressScheme {
    pub fn new(addresses: Vec<String>) -> Result<Self, AddressError> {
        let d = addresses.first().map_or(0, |a| a.chars().count());
        for a in &addresses {
            let len = a.chars().count();
            if len != d {
                return Err(AddressError::LengthMismatch(d, len));
            }
            if let Some(c) = a.chars().find(|c| !matches!(c, '0' | '1' | '*')) {
                return Err(AddressError::InvalidSymbol(c));
            }
        }
        Ok(Self { d, addresses })
    }
}

/// Number of positions where one address has `0` and the other `1`.
pub fn address_distance(a: &str, b: &str) -> Result<usize, AddressError> {
    let (la, lb) = (a.chars().count(), b.chars().count());
    if la != lb {
        return Err(AddressError::LengthMismatch(la, lb));
    }
    Ok(a.chars()
        .zip(b.chars())
        .filter(|p| matches!(p, ('0', '1') | ('1', '0')))
        .count())
}

pub fn verify_scheme(g: &LabeledGraph, s: &AddressScheme) -> Result<bool, AddressError> {
    let n = g.vertex_count();
    if s.addresses.len() != n {
        return Err(AddressError::SizeMismatch {
            expected: n,
            got: s.addresses.len(),
        });
    }
    let dist = g.distances()?;
    for (i, row) in dist.iter().enumerate() {
        for (j, &want) in row.iter().enumerate().skip(i + 1) {
            if address_distance(&s.addresses[i], &s.addresses[j])? != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn symbol(c: u8) -> char {
    match c {
        0 => '0',
        1 => '1',
        _ => '*',
    }
}

fn conflicts(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|&(&x, &y)| x + y == 1).count()
}

enum Outcome {
    Found(Vec<Vec<u8>>),
    Exhausted,
    OverBudget,
}

struct Search<'a> {
    d: usize,
    /// Distances between vertices in search order.
    dist: &'a [Vec<usize>],
    rows: &'a [Vec<u8>],
    budget: u64,
    nodes: u64,
}

impl Search<'_> {
    /// `tied[j]`: columns `j` and `j + 1` agree on every assigned row.
    fn place(&mut self, assigned: &mut Vec<Vec<u8>>, tied: &[bool]) -> Outcome {
        let i = assigned.len();
        if i == self.dist.len() {
            return Outcome::Found(assigned.clone());
        }
        for row in self.rows {
            if !(0..self.d.saturating_sub(1)).all(|j| !tied[j] || row[j] <= row[j + 1]) {
                continue;
            }
            if !assigned
                .iter()
                .enumerate()
                .all(|(h, prev)| conflicts(prev, row) == self.dist[h][i])
            {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Outcome::OverBudget;
            }
            let next_tied: Vec<bool> = (0..tied.len()).map(|j| tied[j] && row[j] == row[j + 1]).collect();
            assigned.push(row.clone());
            let out = self.place(assigned, &next_tied);
            assigned.pop();
            if !matches!(out, Outcome::Exhausted) {
                return out;
            }
        }
        Outcome::Exhausted
    }
}

fn all_rows(d: usize) -> Vec<Vec<u8>> {
    let total = 3usize.pow(d as u32);
    (0..total)
        .map(|mut code| {
            let mut row = vec![0u8; d];
            for slot in row.iter_mut().rev() {
                *slot = (code % 3) as u8;
                code /= 3;
            }
            row
        })
        .collect()
}

/// Exhaustive backtracking for a scheme of length `d`.
///
/// Vertices are assigned in breadth-first order from vertex 1; a partial
/// assignment is pruned as soon as a pairwise distance is violated. Column
/// permutations are factored out by keeping the columns in nondecreasing
/// lexicographic order (`0 < 1 < *`). The branches for the first vertex run
/// in parallel, each with its own node `budget`. `Ok(None)` means no scheme
/// exists.
pub fn search_scheme(
    g: &LabeledGraph,
    d: usize,
    budget: u64,
) -> Result<Option<AddressScheme>, AddressError> {
    let n = g.vertex_count();
    if n > MAX_SEARCH_VERTICES {
        return Err(AddressError::TooLarge(n));
    }
    let full = g.distances()?;
    if n == 0 {
        return Ok(Some(AddressScheme { d, addresses: vec![] }));
    }
    let order: Vec<usize> = {
        let levels = g.bfs(1);
        let mut vs: Vec<usize> = (1..=n).collect();
        vs.sort_by_key(|&v| (levels[v - 1], v));
        vs
    };
    let dist: Vec<Vec<usize>> = order
        .iter()
        .map(|&u| order.iter().map(|&v| full[u - 1][v - 1]).collect())
        .collect();
    let rows = all_rows(d);
    let first: Vec<&Vec<u8>> = rows
        .iter()
        .filter(|r| r.windows(2).all(|w| w[0] <= w[1]))
        .collect();

    let outcomes: Vec<Outcome> = first
        .par_iter()
        .map(|row| {
            let mut search = Search {
                d,
                dist: &dist,
                rows: &rows,
                budget,
                nodes: 1,
            };
            let tied: Vec<bool> = (0..d.saturating_sub(1)).map(|j| row[j] == row[j + 1]).collect();
            search.place(&mut vec![(*row).clone()], &tied)
        })
        .collect();

    let mut over = false;
    for out in outcomes {
        match out {
            Outcome::Found(assigned) => {
                let mut addresses = vec![String::new(); n];
                for (pos, &v) in order.iter().enumerate() {
                    addresses[v - 1] = assigned[pos].iter().map(|&c| symbol(c)).collect();
                }
                return Ok(Some(AddressScheme { d, addresses }));
            }
            Outcome::OverBudget => over = true,
            Outcome::Exhausted => {}
        }
    }
    if over {
        Err(AddressError::BudgetExceeded(budget))
    } else {
        Ok(None)
    }
}

/// `N(G)` with the evidence that fixes it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactN {
    pub value: usize,
    pub lower_bound: usize,
    /// Lengths below `value` shown infeasible by exhaustive search.
    pub refuted: Vec<usize>,
    pub scheme: AddressScheme,
}

/// Smallest `d` admitting a scheme, searched upward from the inertia bound.
pub fn exact_n(g: &LabeledGraph, budget: u64) -> Result<ExactN, AddressError> {
    let n = g.vertex_count();
    if n > MAX_SEARCH_VERTICES {
        return Err(AddressError::TooLarge(n));
    }
    let inertia = inertia_congruence(&all_pairs_distances(g)?)?;
    let lower_bound = addressing_lower_bound(inertia);
    let cap = n.saturating_sub(1);
    let mut refuted = Vec::new();
    for d in lower_bound..=cap.max(lower_bound) {
        match search_scheme(g, d, budget)? {
            Some(scheme) => {
                return Ok(ExactN {
                    value: d,
                    lower_bound,
                    refuted,
                    scheme,
                })
            }
            None => refuted.push(d),
        }
    }
    Err(AddressError::NotFound(cap))
}
