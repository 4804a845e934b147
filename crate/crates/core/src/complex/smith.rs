//! Smith normal form with tracked unimodular transforms.
//!
//! The pivot is always the entry of minimal size in the active submatrix,
//! ties broken by `(row, col)` in lexicographic order, so the decomposition is
//! a deterministic function of its input.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::matrix::{dense_from_integer, dense_identity, Dense, IntegerMatrix};
use super::ring::{EuclideanDomain, Integers};

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn shape(&self) -> (usize, usize) {
        self.d.shape()
    }

    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i)).collect()
    }
}

/// Smith normal form over the integers.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let form = smith(&Integers, dense_from_integer(&Integers, a), a.cols());
    let (rows, cols) = a.shape();
    SmithDecomposition {
        d: IntegerMatrix::from_dense(rows, cols, &form.d),
        u: IntegerMatrix::from_dense(rows, rows, &form.u),
        v: IntegerMatrix::from_dense(cols, cols, &form.v),
        u_inv: IntegerMatrix::from_dense(rows, rows, &form.u_inv),
        v_inv: IntegerMatrix::from_dense(cols, cols, &form.v_inv),
        rank: form.rank,
    }
}

/// Dense Smith form over any Euclidean domain.
#[derive(Debug, Clone)]
pub(crate) struct SmithForm<E> {
    pub d: Dense<E>,
    pub u: Dense<E>,
    pub u_inv: Dense<E>,
    pub v: Dense<E>,
    pub v_inv: Dense<E>,
    pub rank: usize,
}

impl<E: Clone> SmithForm<E> {
    pub fn diagonal(&self) -> Vec<E> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

struct Elimination<'r, R: EuclideanDomain> {
    ring: &'r R,
    a: Dense<R::Elem>,
    u: Dense<R::Elem>,
    u_inv: Dense<R::Elem>,
    v: Dense<R::Elem>,
    v_inv: Dense<R::Elem>,
    rows: usize,
    cols: usize,
}

impl<R: EuclideanDomain> Elimination<'_, R> {
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        self.u.swap(i, k);
        for row in &mut self.u_inv {
            row.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in &mut self.a {
            row.swap(j, k);
        }
        for row in &mut self.v {
            row.swap(j, k);
        }
        self.v_inv.swap(j, k);
    }

    /// row_i -= q * row_k
    fn row_axpy(&mut self, i: usize, k: usize, q: &R::Elem) {
        let ring = self.ring;
        let (src, dst) = two_rows(&mut self.a, k, i);
        axpy(ring, dst, src, q);
        let (src, dst) = two_rows(&mut self.u, k, i);
        axpy(ring, dst, src, q);
        // u_inv: col_k += q * col_i
        for row in &mut self.u_inv {
            if !ring.is_zero(&row[i]) {
                row[k] = ring.add(&row[k], &ring.mul(q, &row[i]));
            }
        }
    }

    /// col_j -= q * col_k
    fn col_axpy(&mut self, j: usize, k: usize, q: &R::Elem) {
        let ring = self.ring;
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                if !ring.is_zero(&row[k]) {
                    row[j] = ring.sub(&row[j], &ring.mul(q, &row[k]));
                }
            }
        }
        // v_inv: row_k += q * row_j
        let (src, dst) = two_rows(&mut self.v_inv, j, k);
        let neg = ring.neg(q);
        axpy(ring, dst, src, &neg);
    }

    fn scale_row(&mut self, k: usize, unit: &R::Elem) {
        let ring = self.ring;
        let inv = ring.unit_inverse(unit);
        for x in self.a[k].iter_mut().chain(self.u[k].iter_mut()) {
            *x = ring.mul(x, unit);
        }
        for row in &mut self.u_inv {
            row[k] = ring.mul(&row[k], &inv);
        }
    }

    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let ring = self.ring;
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let x = &self.a[i][j];
                if ring.is_zero(x) {
                    continue;
                }
                if ring.is_unit(x) {
                    // Units have minimal size; the first one in row-major order wins.
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if ring.size_cmp(x, &self.a[bi][bj]).is_ge() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn non_divisible(&self, k: usize) -> Option<usize> {
        let ring = self.ring;
        let p = &self.a[k][k];
        (k + 1..self.rows).find(|&i| {
            (k + 1..self.cols).any(|j| !ring.is_zero(&self.a[i][j]) && !ring.is_zero(&ring.div_rem(&self.a[i][j], p).1))
        })
    }
}

fn two_rows<E>(m: &mut [Vec<E>], src: usize, dst: usize) -> (&Vec<E>, &mut Vec<E>) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

/// dst -= q * src
fn axpy<R: EuclideanDomain>(ring: &R, dst: &mut [R::Elem], src: &[R::Elem], q: &R::Elem) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !ring.is_zero(s) {
            *d = ring.sub(d, &ring.mul(q, s));
        }
    }
}

pub(crate) fn smith<R: EuclideanDomain>(ring: &R, a: Dense<R::Elem>, cols: usize) -> SmithForm<R::Elem> {
    let rows = a.len();
    debug_assert!(a.iter().all(|r| r.len() == cols));
    let mut e = Elimination {
        ring,
        a,
        u: dense_identity(ring, rows),
        u_inv: dense_identity(ring, rows),
        v: dense_identity(ring, cols),
        v_inv: dense_identity(ring, cols),
        rows,
        cols,
    };
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        while let Some((pi, pj)) = e.pivot(k) {
            e.swap_rows(k, pi);
            e.swap_cols(k, pj);
            let mut clean = true;
            for i in k + 1..rows {
                if !ring.is_zero(&e.a[i][k]) {
                    let (q, r) = ring.div_rem(&e.a[i][k], &e.a[k][k]);
                    e.row_axpy(i, k, &q);
                    clean &= ring.is_zero(&r);
                }
            }
            if !clean {
                continue;
            }
            for j in k + 1..cols {
                if !ring.is_zero(&e.a[k][j]) {
                    let (q, r) = ring.div_rem(&e.a[k][j], &e.a[k][k]);
                    e.col_axpy(j, k, &q);
                    clean &= ring.is_zero(&r);
                }
            }
            if !clean {
                continue;
            }
            if !ring.is_field() {
                if let Some(i) = e.non_divisible(k) {
                    // row_k += row_i brings the offending entry into the pivot row.
                    let minus_one = ring.neg(&ring.one());
                    e.row_axpy(k, i, &minus_one);
                    continue;
                }
            }
            let unit = ring.normalizing_unit(&e.a[k][k]);
            e.scale_row(k, &unit);
            rank = k + 1;
            break;
        }
        if rank != k + 1 {
            break;
        }
    }
    SmithForm {
        d: e.a,
        u: e.u,
        u_inv: e.u_inv,
        v: e.v,
        v_inv: e.v_inv,
        rank,
    }
}
