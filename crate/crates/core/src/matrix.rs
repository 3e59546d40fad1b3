//! Square matrices of arbitrary-precision integers.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A dense square matrix over `BigInt`, row-major, indexed `(row, col)` from 0.
///
/// When a matrix is attached to a graph, vertex `v` owns row and column `v - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    order: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            data: vec![BigInt::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(order: usize) -> Self {
        Self {
            order,
            data: vec![BigInt::one(); order * order],
        }
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                data.push(f(i, j));
            }
        }
        Self { order, data }
    }

    /// Builds from rows; `None` if the rows do not form a square.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Option<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return None;
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Some(Self { order, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Option<Self> {
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.chunks(self.order.max(1)).take(self.order)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self[(j, i)].clone())
    }

    /// Matrix product; `None` on order mismatch.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        if self.order != other.order {
            return None;
        }
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Some(out)
    }

    pub fn add(&self, other: &Self) -> Option<Self> {
        if self.order != other.order {
            return None;
        }
        Some(Self {
            order: self.order,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    /// Leading principal submatrix of order `k`.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k, |i, j| self[(i, j)].clone())
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn principal(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |i, j| self[(indices[i], indices[j])].clone())
    }

    /// `P^T A P` for the permutation taking new position `i` to old index `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.principal(perm)
    }

    /// Sets `(i, j)` and `(j, i)` together.
    pub fn set_sym(&mut self, i: usize, j: usize, value: BigInt) {
        self[(j, i)] = value.clone();
        self[(i, j)] = value;
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        self.rows()
            .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.order + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.order + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.order {
            let row: Vec<String> = cells[i * self.order..(i + 1) * self.order]
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Serialized as an array of rows of decimal strings so that precision
/// survives any JSON reader.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .rows()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(deserializer)?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::from_rows(&parsed).ok_or_else(|| D::Error::custom("matrix is not square"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]).unwrap();
        let b = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_i64_rows().unwrap(), vec![vec![2, 1], vec![4, 3]]);
        assert_eq!(a.transpose().to_i64_rows().unwrap(), vec![vec![1, 3], vec![2, 4]]);
        assert!(!a.is_symmetric());
        assert!(b.is_symmetric());
        assert!(a.mul(&IntMatrix::identity(3)).is_none());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(IntMatrix::from_i64_rows(&[&[1, 2], &[3]]).is_none());
        assert_eq!(IntMatrix::from_i64_rows(&[]).unwrap().order(), 0);
    }

    #[test]
    fn json_uses_decimal_strings() {
        let mut m = IntMatrix::zeros(2);
        m[(0, 1)] = "123456789012345678901234567890".parse().unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["0","123456789012345678901234567890"],["0","0"]]"#);
        let back: IntMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<IntMatrix>(r#"[["1","2"]]"#).is_err());
    }

    #[test]
    fn principal_submatrix() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).unwrap();
        assert_eq!(
            a.principal(&[2, 0]).to_i64_rows().unwrap(),
            vec![vec![9, 7], vec![3, 1]]
        );
        assert_eq!(a.leading(2).to_i64_rows().unwrap(), vec![vec![1, 2], vec![4, 5]]);
    }
}
