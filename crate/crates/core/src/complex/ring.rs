//! Coefficient rings for exact linear algebra.
//!
//! Elimination routines are written once against [`EuclideanDomain`] and run
//! over the integers, the rationals, or a prime field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A ring with division with remainder, as seen by the elimination code.
///
/// Ring elements carry no runtime context, so the ring value itself is passed
/// to every operation (the prime field needs its modulus).
pub trait EuclideanDomain {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn embed(&self, n: &BigInt) -> Self::Elem;
    /// Integer representative; only defined for elements with one.
    fn to_int(&self, a: &Self::Elem) -> BigInt;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Compares Euclidean sizes; pivots of minimal size are chosen first.
    fn size_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> std::cmp::Ordering;

    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// `(q, r)` with `a = q * b + r` and `size(r) < size(b)`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// A unit `u` such that `u * a` is the canonical associate of `a`.
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    /// Inverse of a unit.
    fn unit_inverse(&self, u: &Self::Elem) -> Self::Elem;

    fn is_field(&self) -> bool;
}

/// The integers with arbitrary precision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl EuclideanDomain for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn embed(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn to_int(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn size_cmp(&self, a: &BigInt, b: &BigInt) -> std::cmp::Ordering {
        a.magnitude().cmp(b.magnitude())
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        // Round to nearest so |r| <= |b| / 2; keeps entries small.
        let (mut q, mut r) = a.div_mod_floor(b);
        if (&r << 1u32).magnitude() > b.magnitude() {
            q += 1;
            r -= b;
        }
        (q, r)
    }
    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn unit_inverse(&self, u: &BigInt) -> BigInt {
        u.clone()
    }
    fn is_field(&self) -> bool {
        false
    }
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl EuclideanDomain for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn embed(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn to_int(&self, a: &BigRational) -> BigInt {
        assert!(a.is_integer(), "non-integral rational {a} has no integer representative");
        a.to_integer()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn size_cmp(&self, a: &BigRational, b: &BigRational) -> std::cmp::Ordering {
        a.is_zero().cmp(&b.is_zero()).reverse()
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a / b, BigRational::zero())
    }
    fn normalizing_unit(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }
    fn unit_inverse(&self, u: &BigRational) -> BigRational {
        u.recip()
    }
    fn is_field(&self) -> bool {
        true
    }
}

/// The field with `p` elements, elements stored as residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Returns `None` unless `p` is prime.
    pub fn new(p: u64) -> Option<Self> {
        if is_prime(p) && p < (1 << 31) {
            Some(Self { p })
        } else {
            None
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl EuclideanDomain for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn embed(&self, n: &BigInt) -> u64 {
        let m = n.mod_floor(&BigInt::from(self.p));
        u64::try_from(m).expect("residue fits in u64")
    }
    fn to_int(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn size_cmp(&self, a: &u64, b: &u64) -> std::cmp::Ordering {
        (*a != 0).cmp(&(*b != 0))
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        (self.mul(a, &self.unit_inverse(b)), 0)
    }
    fn normalizing_unit(&self, a: &u64) -> u64 {
        if *a == 0 {
            1
        } else {
            self.unit_inverse(a)
        }
    }
    fn unit_inverse(&self, u: &u64) -> u64 {
        self.pow(*u, self.p - 2)
    }
    fn is_field(&self) -> bool {
        true
    }
}

/// Coefficient ring selector used across the public API.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficients {
    Integers,
    Rationals,
    /// Prime field of the given order.
    Prime(u64),
}

impl Coefficients {
    pub fn prime_field(self) -> Option<PrimeField> {
        match self {
            Coefficients::Prime(p) => PrimeField::new(p),
            _ => None,
        }
    }

    /// Canonical representative of an integer in this ring, as used for
    /// matrices over the ring: integers unchanged, residues for `Z/p`.
    pub fn reduce(self, n: &BigInt) -> BigInt {
        match self {
            Coefficients::Prime(p) => n.mod_floor(&BigInt::from(p)),
            _ => n.clone(),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}
