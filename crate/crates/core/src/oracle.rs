//! Slow reference implementations used to cross-check the fast paths.
//!
//! Nothing here shares code with [`crate::linalg`]: determinants are expanded
//! by minors and inertia is read off the characteristic polynomial with
//! Descartes' rule of signs, which is exact for real symmetric matrices
//! because every root is real.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::Inertia;
use crate::matrix::IntMatrix;

/// Laplace expansion along the first row. Exponential; keep orders small.
pub fn laplace_determinant(a: &IntMatrix) -> BigInt {
    let n = a.order();
    let rows: Vec<Vec<BigInt>> = a.rows().map(<[BigInt]>::to_vec).collect();
    let cols: Vec<usize> = (0..n).collect();
    expand(&rows, 0, &cols)
}

fn expand(rows: &[Vec<BigInt>], row: usize, cols: &[usize]) -> BigInt {
    if cols.is_empty() {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &rows[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * expand(rows, row + 1, &rest);
        if pos % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `sum_{i,j} (-1)^{i+j} det A(i|j)` term by term.
pub fn laplace_cofactor_sum(a: &IntMatrix) -> BigInt {
    let n = a.order();
    let mut total = BigInt::zero();
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = IntMatrix::from_fn(n - 1, |r, c| a[(rows[r], cols[c])].clone());
            let d = laplace_determinant(&minor);
            if (i + j) % 2 == 0 {
                total += d;
            } else {
                total -= d;
            }
        }
    }
    total
}

/// Coefficients `c_0..=c_n` of `det(xI - A)` by the Faddeev-LeVerrier recurrence.
pub fn characteristic_polynomial(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.order();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n);
    for k in 1..=n {
        let mut next = a.mul(&m).expect("same order");
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let am = a.mul(&next).expect("same order");
        let trace: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs[n - k] = -(trace / BigInt::from(k));
        m = next;
    }
    coeffs
}

fn sign_changes<'a>(values: impl Iterator<Item = &'a BigInt>) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for v in values.filter(|v| !v.is_zero()) {
        let positive = v.is_positive();
        if last.is_some_and(|l| l != positive) {
            changes += 1;
        }
        last = Some(positive);
    }
    changes
}

/// Inertia of a symmetric matrix from its characteristic polynomial.
pub fn descartes_inertia(a: &IntMatrix) -> Inertia {
    let c = characteristic_polynomial(a);
    let zero = c.iter().take_while(|x| x.is_zero()).count();
    let plus = sign_changes(c.iter().rev());
    let flipped: Vec<BigInt> = c
        .iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() })
        .collect();
    let minus = sign_changes(flipped.iter().rev());
    Inertia::new(plus, minus, zero)
}
