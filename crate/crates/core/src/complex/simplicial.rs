//! Finite abstract simplicial complexes on totally ordered vertices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::matrix::IntegerMatrix;

/// A simplex as its strictly increasing vertex list.
pub type Simplex = Vec<usize>;

/// Why a list of simplices is not a simplicial complex.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum ComplexViolation {
    #[error("empty simplex")]
    EmptySimplex,
    #[error("simplex {0:?} is not strictly increasing")]
    Unsorted(Simplex),
    #[error("simplex {0:?} listed twice")]
    Duplicate(Simplex),
    #[error("simplex {simplex:?} is missing its face {face:?}")]
    MissingFace { simplex: Simplex, face: Simplex },
}

/// Checks closure under faces, sortedness and uniqueness, reporting the
/// first violation in input order.
pub fn validate_complex(simplices: &[Simplex]) -> Result<(), ComplexViolation> {
    let mut seen = BTreeSet::new();
    for s in simplices {
        if s.is_empty() {
            return Err(ComplexViolation::EmptySimplex);
        }
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ComplexViolation::Unsorted(s.clone()));
        }
        if !seen.insert(s.as_slice()) {
            return Err(ComplexViolation::Duplicate(s.clone()));
        }
    }
    for s in simplices {
        if s.len() < 2 {
            continue;
        }
        for i in 0..s.len() {
            let face = facet(s, i);
            if !seen.contains(face.as_slice()) {
                return Err(ComplexViolation::MissingFace {
                    simplex: s.clone(),
                    face,
                });
            }
        }
    }
    Ok(())
}

/// The face obtained by omitting position `i`.
pub fn facet(s: &[usize], i: usize) -> Simplex {
    s.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect()
}

/// A finite simplicial complex. Vertex labels are `usize`; their numeric
/// order is the global vertex order that fixes orientations.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SimplicialComplex {
    /// `simplices[q]` holds the q-simplices in lexicographic order.
    simplices: Vec<Vec<Simplex>>,
    #[serde(skip)]
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a complex from a complete list of simplices (any order).
    pub fn new(simplices: Vec<Simplex>) -> Result<Self, ComplexViolation> {
        validate_complex(&simplices)?;
        Ok(Self::from_valid(simplices))
    }

    /// Builds the smallest complex containing every given simplex. Vertex
    /// lists are sorted and deduplicated first.
    pub fn from_maximal<I, S>(generators: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Simplex>,
    {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for g in generators {
            let mut s: Simplex = g.into();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            add_with_faces(&mut all, s);
        }
        Self::from_valid(all.into_iter().collect())
    }

    fn from_valid(simplices: Vec<Simplex>) -> Self {
        let max_dim = simplices.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); max_dim];
        for s in simplices {
            by_dim[s.len() - 1].push(s);
        }
        for layer in &mut by_dim {
            layer.sort();
        }
        let mut c = Self {
            simplices: by_dim,
            index: Vec::new(),
        };
        c.rebuild_index();
        c
    }

    fn rebuild_index(&mut self) {
        self.index = self
            .simplices
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
    }

    /// Restores the lookup tables after deserialization.
    pub fn reindexed(mut self) -> Self {
        self.rebuild_index();
        self
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, q: usize) -> &[Simplex] {
        self.simplices.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    /// Vertex labels in increasing order.
    pub fn vertices(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let q = s.len().checked_sub(1)?;
        self.index.get(q)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    /// All simplices, lowest dimension first.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().flatten()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self.iter().filter(|s| !self.has_coface(s)).cloned().collect();
        out.sort();
        out
    }

    fn has_coface(&self, s: &[usize]) -> bool {
        self.simplices(s.len()).iter().any(|t| is_face(s, t))
    }

    /// The full subcomplex on the vertices accepted by `keep`.
    pub fn induced(&self, keep: impl Fn(usize) -> bool) -> Self {
        let kept: Vec<Simplex> = self.iter().filter(|s| s.iter().all(|&v| keep(v))).cloned().collect();
        Self::from_valid(kept)
    }

    /// Relabels vertices through a strictly increasing map, so simplex
    /// orientation is preserved.
    pub fn relabeled(&self, map: impl Fn(usize) -> usize) -> Self {
        let out: Vec<Simplex> = self.iter().map(|s| s.iter().map(|&v| map(v)).collect()).collect();
        let c = Self::from_valid(out);
        debug_assert!(c.iter().all(|s| s.windows(2).all(|w| w[0] < w[1])));
        c
    }

    /// Simplicial boundary from q-chains to (q-1)-chains. Face `i` (omit the
    /// i-th vertex) enters with sign `(-1)^i`.
    pub fn boundary_matrix(&self, q: usize) -> Result<IntegerMatrix, BoundaryError> {
        if q == 0 {
            return Err(BoundaryError::DegreeZero);
        }
        let mut m = IntegerMatrix::zeros(self.count(q - 1), self.count(q));
        for (j, s) in self.simplices(q).iter().enumerate() {
            for i in 0..s.len() {
                let row = self.index_of(&facet(s, i)).expect("complex is closed under faces");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(row, j, BigInt::from(sign));
            }
        }
        Ok(m)
    }

    /// Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(q, l)| if q % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = self.simplices.iter().map(Vec::len).collect();
        f.debug_struct("SimplicialComplex").field("f_vector", &counts).field("maximal", &self.maximal_simplices()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("boundary in degree 0 is not defined; use the augmentation-free convention")]
    DegreeZero,
}

fn is_face(s: &[usize], t: &[usize]) -> bool {
    let mut it = t.iter();
    s.iter().all(|v| it.any(|w| w == v))
}

fn add_with_faces(all: &mut BTreeSet<Simplex>, s: Simplex) {
    if all.contains(&s) {
        return;
    }
    if s.len() > 1 {
        for i in 0..s.len() {
            add_with_faces(all, facet(&s, i));
        }
    }
    all.insert(s);
}
