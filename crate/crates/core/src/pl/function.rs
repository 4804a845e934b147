//! Vertex functions and their critical sequences.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::complex::simplicial::SimplicialComplex;
use crate::error::{Error, Result};

/// Scalar type for function values: any ordered number type. Exact types
/// (rationals) keep level comparisons free of rounding.
pub trait Level: Clone + PartialOrd + Num + fmt::Debug + fmt::Display {}

impl<T: Clone + PartialOrd + Num + fmt::Debug + fmt::Display> Level for T {}

pub(crate) fn level_cmp<T: Level>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).expect("level values are totally ordered")
}

pub fn midpoint<T: Level>(a: &T, b: &T) -> T {
    (a.clone() + b.clone()) / (T::one() + T::one())
}

/// Values on vertices, indexed by vertex label; extended affinely over simplices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexFunction<T> {
    pub values: Vec<T>,
}

impl<T: Level> VertexFunction<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values }
    }

    pub fn value(&self, v: usize) -> &T {
        &self.values[v]
    }

    /// Checks that every vertex of `complex` has a comparable value.
    pub fn check_against(&self, complex: &SimplicialComplex) -> Result<()> {
        for v in complex.vertices() {
            let x = self.values.get(v).ok_or(Error::MissingValue(v))?;
            if x.partial_cmp(x).is_none() {
                return Err(Error::IncomparableValue(v));
            }
        }
        Ok(())
    }
}

/// A complex with a PL function on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlInstance<T> {
    pub complex: SimplicialComplex,
    pub function: VertexFunction<T>,
}

impl<T: Level> PlInstance<T> {
    pub fn new(complex: SimplicialComplex, function: VertexFunction<T>) -> Result<Self> {
        function.check_against(&complex)?;
        Ok(Self { complex, function })
    }

    pub fn critical_values(&self) -> CriticalSequence<T> {
        critical_values(&self.complex, &self.function)
    }
}

/// Strictly increasing levels `c_0 < ... < c_k` with the midpoints of each gap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalSequence<T> {
    values: Vec<T>,
    midpoints: Vec<T>,
}

impl<T: Level> CriticalSequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.windows(2).any(|w| level_cmp(&w[0], &w[1]) != Ordering::Less) {
            return Err(Error::LevelsNotIncreasing);
        }
        let midpoints = values.windows(2).map(|w| midpoint(&w[0], &w[1])).collect();
        Ok(Self { values, midpoints })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn midpoints(&self) -> &[T] {
        &self.midpoints
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn gap_count(&self) -> usize {
        self.midpoints.len()
    }

    /// The sequence with one more level inserted; `None` if already present.
    pub fn with_level(&self, level: T) -> Option<Self> {
        if self.values.iter().any(|v| level_cmp(v, &level) == Ordering::Equal) {
            return None;
        }
        let mut values = self.values.clone();
        let pos = values.iter().position(|v| level_cmp(v, &level) == Ordering::Greater).unwrap_or(values.len());
        values.insert(pos, level);
        Self::new(values).ok()
    }

    /// Checks that every vertex value of `function` on `complex` is a level.
    pub fn covers(&self, complex: &SimplicialComplex, function: &VertexFunction<T>) -> Result<()> {
        for v in complex.vertices() {
            let x = function.value(v);
            if self.values.binary_search_by(|c| level_cmp(c, x)).is_err() {
                return Err(Error::LevelsMissingVertexValue(v));
            }
        }
        Ok(())
    }
}

/// The sorted distinct vertex values. Every topologically critical value of
/// a PL function is a vertex value, so this set is a valid labeling set.
pub fn critical_values<T: Level>(complex: &SimplicialComplex, function: &VertexFunction<T>) -> CriticalSequence<T> {
    let mut values: Vec<T> = complex.vertices().into_iter().map(|v| function.value(v).clone()).collect();
    values.sort_by(level_cmp);
    values.dedup_by(|a, b| level_cmp(a, b) == Ordering::Equal);
    CriticalSequence::new(values).expect("sorted distinct values")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sorted_distinct_values() {
        let tri = SimplicialComplex::from_maximal([vec![0, 1, 2]]);
        let f = VertexFunction::new(vec![q(2, 1), q(0, 1), q(1, 1)]);
        assert_eq!(critical_values(&tri, &f).values(), &[q(0, 1), q(1, 1), q(2, 1)]);
        let flat = SimplicialComplex::from_maximal([vec![0, 1]]);
        let g = VertexFunction::new(vec![q(1, 1), q(1, 1)]);
        let cs = critical_values(&flat, &g);
        assert_eq!(cs.values(), &[q(1, 1)]);
        assert_eq!(cs.gap_count(), 0);
        assert!(critical_values(&SimplicialComplex::empty(), &g).is_empty());
    }

    #[test]
    fn midpoints_are_exact() {
        let cs = CriticalSequence::new(vec![q(0, 1), q(1, 3), q(1, 1)]).unwrap();
        assert_eq!(cs.midpoints(), &[q(1, 6), q(2, 3)]);
        assert!(CriticalSequence::new(vec![q(1, 1), q(1, 1)]).is_err());
        let more = cs.with_level(q(1, 2)).unwrap();
        assert_eq!(more.len(), 4);
        assert!(cs.with_level(q(1, 3)).is_none());
    }

    #[test]
    fn generic_over_scalar() {
        let edge = SimplicialComplex::from_maximal([vec![0, 1]]);
        let f = VertexFunction::new(vec![0.5f64, -1.0]);
        assert_eq!(critical_values(&edge, &f).midpoints(), &[-0.25]);
        let missing = VertexFunction::new(vec![0.5f64]);
        assert_eq!(missing.check_against(&edge), Err(Error::MissingValue(1)));
        let nan = VertexFunction::new(vec![0.5f64, f64::NAN]);
        assert_eq!(nan.check_against(&edge), Err(Error::IncomparableValue(1)));
    }
}
