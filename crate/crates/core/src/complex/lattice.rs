//! Kernels, linear solves and subquotients built on the Smith form.

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::AbelianGroup;
use super::matrix::{dense_from_integer, dense_mul, dense_mul_vec, Dense, IntegerMatrix};
use super::ring::{Coefficients, EuclideanDomain, Integers, PrimeField, Rationals};
use super::smith::smith;

/// Columns spanning the kernel of `a` (`rows x cols`), as a `cols x k` matrix.
pub(crate) fn kernel_basis<R: EuclideanDomain>(ring: &R, a: Dense<R::Elem>, cols: usize) -> Dense<R::Elem> {
    let form = smith(ring, a, cols);
    form.v.iter().map(|row| row[form.rank..].to_vec()).collect()
}

/// Some `x` with `a x = y`, or `None` when the system has no solution.
pub(crate) fn solve<R: EuclideanDomain>(ring: &R, a: Dense<R::Elem>, cols: usize, y: &[R::Elem]) -> Option<Vec<R::Elem>> {
    let form = smith(ring, a, cols);
    let uy = dense_mul_vec(ring, &form.u, y);
    let mut w = vec![ring.zero(); cols];
    for (i, c) in uy.iter().enumerate() {
        if i < form.rank {
            let (q, r) = ring.div_rem(c, &form.d[i][i]);
            if !ring.is_zero(&r) {
                return None;
            }
            w[i] = q;
        } else if !ring.is_zero(c) {
            return None;
        }
    }
    Some(dense_mul_vec(ring, &form.v, &w))
}

/// `span(generators) / span(relations)` inside `R^n`, as `(free rank, torsion)`.
///
/// Every relation column must lie in the span of the generator columns.
pub(crate) fn subquotient<R: EuclideanDomain>(
    ring: &R,
    n: usize,
    generators: &Dense<R::Elem>,
    relations: &Dense<R::Elem>,
) -> (usize, Vec<R::Elem>) {
    let g = generators.first().map_or(0, Vec::len);
    let h = relations.first().map_or(0, Vec::len);
    if n == 0 {
        return (0, Vec::new());
    }
    let form = smith(ring, generators.clone(), g);
    let rank = form.rank;
    // Basis of the generated lattice: columns d_i * u_inv[:, i].
    // Relation coordinates in that basis: (u w)_i / d_i.
    let uw = dense_mul(ring, &form.u, relations, n);
    let mut coords: Dense<R::Elem> = vec![vec![ring.zero(); h]; rank];
    for (i, row) in coords.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            let (q, r) = ring.div_rem(&uw[i][j], &form.d[i][i]);
            assert!(ring.is_zero(&r), "relation outside the generated lattice");
            *c = q;
        }
    }
    for row in uw.iter().skip(rank) {
        assert!(row.iter().all(|x| ring.is_zero(x)), "relation outside the generated lattice");
    }
    let rel = smith(ring, coords, h);
    let torsion = rel.diagonal().into_iter().filter(|d| !ring.is_unit(d)).collect();
    (rank - rel.rank, torsion)
}

fn stack_with_moduli(a: &IntegerMatrix, moduli: &[BigInt]) -> IntegerMatrix {
    assert_eq!(a.rows(), moduli.len(), "one modulus per row");
    let extra: Vec<usize> = (0..moduli.len()).filter(|&i| !moduli[i].is_zero()).collect();
    let mut out = IntegerMatrix::zeros(a.rows(), a.cols() + extra.len());
    for (i, j, v) in a.iter() {
        out.set(i, j, v.clone());
    }
    for (k, &i) in extra.iter().enumerate() {
        out.set(i, a.cols() + k, moduli[i].clone());
    }
    out
}

fn field_moduli_check(ring: Coefficients, moduli: &[BigInt]) {
    if ring != Coefficients::Integers {
        assert!(moduli.iter().all(Zero::is_zero), "torsion moduli over a field");
    }
}

/// Solves `a x = y` modulo the per-row moduli (0 = free row). Over a prime
/// field entries are reduced mod p; over the rationals an integral solution
/// is required.
pub fn solve_modulo(ring: Coefficients, a: &IntegerMatrix, moduli: &[BigInt], y: &[BigInt]) -> Option<Vec<BigInt>> {
    field_moduli_check(ring, moduli);
    let stacked = stack_with_moduli(a, moduli);
    let x = match ring {
        Coefficients::Integers | Coefficients::Rationals => {
            let y: Vec<BigInt> = y.to_vec();
            solve(&Integers, dense_from_integer(&Integers, &stacked), stacked.cols(), &y)?
        }
        Coefficients::Prime(p) => {
            let f = PrimeField::new(p).expect("prime modulus");
            let y: Vec<u64> = y.iter().map(|v| f.embed(v)).collect();
            let x = solve(&f, dense_from_integer(&f, &stacked), stacked.cols(), &y)?;
            x.iter().map(|v| f.to_int(v)).collect()
        }
    };
    Some(x[..a.cols()].to_vec())
}

/// Homology at the middle of `R^n/(moduli) --outgoing--> R^m/(out_moduli)`
/// with `incoming` mapping into the middle group: `ker(outgoing) / im(incoming)`.
pub fn presented_homology(
    ring: Coefficients,
    incoming: &IntegerMatrix,
    outgoing: &IntegerMatrix,
    moduli: &[BigInt],
    out_moduli: &[BigInt],
) -> AbelianGroup {
    let n = moduli.len();
    assert_eq!(incoming.rows(), n, "incoming map has the wrong codomain size");
    assert_eq!(outgoing.cols(), n, "outgoing map has the wrong domain size");
    field_moduli_check(ring, moduli);
    field_moduli_check(ring, out_moduli);
    let stacked_out = stack_with_moduli(outgoing, out_moduli);
    let stacked_in = stack_with_moduli(incoming, moduli);
    fn run<R: EuclideanDomain>(r: &R, n: usize, out: &IntegerMatrix, inc: &IntegerMatrix) -> (usize, Vec<BigInt>) {
        let k = kernel_basis(r, dense_from_integer(r, out), out.cols());
        let gens: Dense<R::Elem> = k.into_iter().take(n).collect();
        let gens = if gens.first().map_or(0, Vec::len) == 0 { vec![Vec::new(); n] } else { gens };
        let rels = dense_from_integer(r, inc);
        let (free, torsion) = subquotient(r, n, &gens, &rels);
        (free, torsion.iter().map(|t| r.to_int(t)).collect())
    }
    let (free, torsion) = match ring {
        Coefficients::Integers => run(&Integers, n, &stacked_out, &stacked_in),
        Coefficients::Rationals => run(&Rationals, n, &stacked_out, &stacked_in),
        Coefficients::Prime(p) => run(&PrimeField::new(p).expect("prime modulus"), n, &stacked_out, &stacked_in),
    };
    AbelianGroup::new(ring, free, &torsion)
}

/// Cokernel of `a: R^n -> R^m/(moduli)`.
pub fn presented_cokernel(ring: Coefficients, a: &IntegerMatrix, moduli: &[BigInt]) -> AbelianGroup {
    let m = a.rows();
    presented_homology(ring, a, &IntegerMatrix::zeros(0, m), moduli, &[])
}

/// Kernel of `a: R^n/(moduli) -> R^m/(out_moduli)`.
pub fn presented_kernel(ring: Coefficients, a: &IntegerMatrix, moduli: &[BigInt], out_moduli: &[BigInt]) -> AbelianGroup {
    let n = a.cols();
    presented_homology(ring, &IntegerMatrix::zeros(n, 0), a, moduli, out_moduli)
}

/// Rank of an integer matrix over the given ring.
pub fn rank_over(ring: Coefficients, a: &IntegerMatrix) -> usize {
    match ring {
        Coefficients::Integers => smith(&Integers, dense_from_integer(&Integers, a), a.cols()).rank,
        Coefficients::Rationals => smith(&Rationals, dense_from_integer(&Rationals, a), a.cols()).rank,
        Coefficients::Prime(p) => {
            let f = PrimeField::new(p).expect("prime modulus");
            smith(&f, dense_from_integer(&f, a), a.cols()).rank
        }
    }
}
