//! Exact determinant, inertia and cofactor sums of integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix orders differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("leading minors {index} and {} are both zero", index + 1)]
    ConsecutiveZeroMinors { index: usize },
    #[error("matrix order {0} is below the required minimum of 2")]
    DimensionTooSmall(usize),
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 3]", from = "[usize; 3]")]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Inertia {
    pub const fn new(plus: usize, minus: usize, zero: usize) -> Self {
        Self { plus, minus, zero }
    }

    pub fn order(&self) -> usize {
        self.plus + self.minus + self.zero
    }
}

impl From<Inertia> for [usize; 3] {
    fn from(i: Inertia) -> Self {
        [i.plus, i.minus, i.zero]
    }
}

impl From<[usize; 3]> for Inertia {
    fn from([plus, minus, zero]: [usize; 3]) -> Self {
        Self { plus, minus, zero }
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.plus, self.minus, self.zero)
    }
}

/// Fraction-free (Bareiss) elimination with row pivoting. Every division
/// by the previous pivot is exact.
pub fn determinant(a: &IntMatrix) -> BigInt {
    let n = a.order();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.rows().map(<[BigInt]>::to_vec).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * pivot - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Inertia by exact rational congruence diagonalization.
///
/// Nonzero diagonal entries are used as pivots (Schur complement). When the
/// whole active diagonal vanishes but some `a_ij != 0`, row and column `j`
/// are added to row and column `i`, which makes `a_ii = 2 a_ij` nonzero.
pub fn inertia_congruence(a: &IntMatrix) -> Result<Inertia, LinalgError> {
    if !a.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let mut m: Vec<Vec<BigRational>> = a
        .rows()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut active: Vec<usize> = (0..a.order()).collect();
    let mut inertia = Inertia::new(0, 0, 0);

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !m[i][i].is_zero()) {
            let p = active.remove(pos);
            if m[p][p].is_positive() {
                inertia.plus += 1;
            } else {
                inertia.minus += 1;
            }
            let pivot = m[p][p].clone();
            for &r in &active {
                if m[r][p].is_zero() {
                    continue;
                }
                let factor = &m[r][p] / &pivot;
                for &c in &active {
                    if !m[p][c].is_zero() {
                        let delta = &factor * &m[p][c];
                        m[r][c] -= delta;
                    }
                }
            }
            continue;
        }
        let off = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..]
                .iter()
                .find(|&&j| !m[i][j].is_zero())
                .map(|&j| (i, j))
        });
        match off {
            Some((i, j)) => {
                for &c in &active {
                    let v = m[j][c].clone();
                    m[i][c] += v;
                }
                for &r in &active {
                    let v = m[r][j].clone();
                    m[r][i] += v;
                }
            }
            None => {
                inertia.zero += active.len();
                active.clear();
            }
        }
    }
    Ok(inertia)
}

/// Leading principal minors `D_1, ..., D_n`.
pub fn leading_minors(a: &IntMatrix) -> Vec<BigInt> {
    (1..=a.order()).map(|k| determinant(&a.leading(k))).collect()
}

/// Inertia from the sign changes of `1, D_1, ..., D_n` with zeros skipped.
/// Valid only for nonsingular matrices without two consecutive zero minors.
pub fn inertia_leading_minors(a: &IntMatrix) -> Result<Inertia, LinalgError> {
    if !a.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let minors = leading_minors(a);
    inertia_from_minors(&minors)
}

pub fn inertia_from_minors(minors: &[BigInt]) -> Result<Inertia, LinalgError> {
    let n = minors.len();
    if minors.last().is_some_and(Zero::is_zero) {
        return Err(LinalgError::Singular);
    }
    if let Some(w) = minors.windows(2).position(|w| w[0].is_zero() && w[1].is_zero()) {
        return Err(LinalgError::ConsecutiveZeroMinors { index: w + 1 });
    }
    let mut changes = 0;
    let mut last_positive = true;
    for d in minors.iter().filter(|d| !d.is_zero()) {
        let positive = d.is_positive();
        if positive != last_positive {
            changes += 1;
        }
        last_positive = positive;
    }
    Ok(Inertia::new(n - changes, changes, 0))
}

/// Sum of all signed cofactors, as `det(A + J) - det(A)`.
pub fn cofactor_sum(a: &IntMatrix) -> BigInt {
    let shifted = a.add(&IntMatrix::ones(a.order())).expect("same order");
    determinant(&shifted) - determinant(a)
}

/// `det(A + J_{2,n}) - det(A)`, where `J_{2,n}` has ones only in the top-left 2x2 block.
pub fn reduced_cofactor_sum(a: &IntMatrix) -> Result<BigInt, LinalgError> {
    let n = a.order();
    if n < 2 {
        return Err(LinalgError::DimensionTooSmall(n));
    }
    let mut shifted = a.clone();
    for i in 0..2 {
        for j in 0..2 {
            shifted[(i, j)] += 1;
        }
    }
    Ok(determinant(&shifted) - determinant(a))
}
