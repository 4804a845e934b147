//! Sparse integer matrices and a dense working representation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ring::EuclideanDomain;

/// Integer matrix stored sparsely by `(row, col)`; absent entries are zero.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from row-major small integers.
    pub fn from_rows<I: Into<BigInt> + Copy>(rows: &[Vec<I>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v.into());
            }
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions add up.
    pub fn from_triples(rows: usize, cols: usize, triples: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in triples {
            let cur = m.get(i, j);
            m.set(i, j, cur + v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        self.entries.get(&(row, col)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn column(&self, col: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rows];
        for (&(i, j), x) in &self.entries {
            if j == col {
                v[i] = x.clone();
            }
        }
        v
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (&(i, j), v) in &other.entries {
            by_row[i].push((j, v));
        }
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                *acc.entry((i, j)).or_default() += a * b;
            }
        }
        for ((i, j), v) in acc {
            out.set(i, j, v);
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            out[i] += a * &v[j];
        }
        out
    }

    /// Entrywise map, dropping entries that become zero.
    pub fn map_entries(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            out.set(i, j, f(v));
        }
        out
    }

    /// The listed columns, in order, as a new matrix.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for (new, &old) in cols.iter().enumerate() {
            for i in 0..self.rows {
                if let Some(v) = self.entries.get(&(i, old)) {
                    out.set(i, new, v.clone());
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-major dense matrix over a ring's element type.
pub(crate) type Dense<E> = Vec<Vec<E>>;

pub(crate) fn dense_identity<R: EuclideanDomain>(ring: &R, n: usize) -> Dense<R::Elem> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}

pub(crate) fn dense_from_integer<R: EuclideanDomain>(ring: &R, m: &IntegerMatrix) -> Dense<R::Elem> {
    let mut d = vec![vec![ring.zero(); m.cols()]; m.rows()];
    for (i, j, v) in m.iter() {
        d[i][j] = ring.embed(v);
    }
    d
}

pub(crate) fn dense_mul<R: EuclideanDomain>(ring: &R, a: &Dense<R::Elem>, b: &Dense<R::Elem>, inner: usize) -> Dense<R::Elem> {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![ring.zero(); cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        debug_assert_eq!(row.len(), inner);
        for (k, x) in row.iter().enumerate() {
            if ring.is_zero(x) {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !ring.is_zero(y) {
                    out[i][j] = ring.add(&out[i][j], &ring.mul(x, y));
                }
            }
        }
    }
    out
}

pub(crate) fn dense_mul_vec<R: EuclideanDomain>(ring: &R, a: &Dense<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !ring.is_zero(x) && !ring.is_zero(y))
                .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
        })
        .collect()
}
