//! One global refinement carrying every critical fiber, midpoint fiber and
//! half-gap slab as subcomplexes, so all of them share chain bases.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::function::{level_cmp, CriticalSequence, Level, PlInstance};
use super::leveled::{level_set_in, slab_in, LevelSet, LeveledComplex, Provenance, Slab};
use crate::error::{Endpoint, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDecomposition<T> {
    pub levels: CriticalSequence<T>,
    /// The instance subdivided at every level, then at every midpoint.
    pub refined: LeveledComplex<T>,
    pub critical: Vec<LevelSet<T>>,
    pub middle: Vec<LevelSet<T>>,
    /// Per gap: the slabs from the lower level to the midpoint and from the
    /// midpoint to the upper level.
    pub halves: Vec<(Slab<T>, Slab<T>)>,
}

impl<T: Level> LevelDecomposition<T> {
    /// Decomposition along the instance's own critical values.
    pub fn new(instance: &PlInstance<T>) -> Result<Self> {
        Self::with_levels(instance, instance.critical_values())
    }

    /// Decomposition along `levels`, which must contain every vertex value.
    pub fn with_levels(instance: &PlInstance<T>, levels: CriticalSequence<T>) -> Result<Self> {
        if instance.complex.is_empty() {
            return Err(Error::EmptyInstance);
        }
        levels.covers(&instance.complex, &instance.function)?;
        let refined = LeveledComplex::from(instance)
            .subdivide_at_all(levels.values())
            .subdivide_at_all(levels.midpoints());
        let critical = levels.values().iter().map(|c| level_set_in(&refined, c)).collect();
        let middle = levels.midpoints().iter().map(|m| level_set_in(&refined, m)).collect();
        let halves = levels
            .midpoints()
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let values = levels.values();
                (slab_in(&refined, &values[i], m), slab_in(&refined, m, &values[i + 1]))
            })
            .collect();
        Ok(Self {
            levels,
            refined,
            critical,
            middle,
            halves,
        })
    }

    pub fn gap_count(&self) -> usize {
        self.middle.len()
    }

    pub fn check_gap(&self, gap: usize) -> Result<()> {
        if gap < self.gap_count() {
            Ok(())
        } else {
            Err(Error::GapOutOfRange(gap))
        }
    }

    /// Index of the critical level at the given end of a gap.
    pub fn endpoint_level(gap: usize, endpoint: Endpoint) -> usize {
        match endpoint {
            Endpoint::Lower => gap,
            Endpoint::Upper => gap + 1,
        }
    }

    /// The half-gap slab between the midpoint and the given end.
    pub fn half(&self, gap: usize, endpoint: Endpoint) -> &Slab<T> {
        match endpoint {
            Endpoint::Lower => &self.halves[gap].0,
            Endpoint::Upper => &self.halves[gap].1,
        }
    }

    /// Vertex map from the midpoint fiber of `gap` to the critical fiber at
    /// `endpoint` (local labels on both sides): each midpoint vertex sits on
    /// an edge between the two levels and moves to that edge's end. The map
    /// is simplicial and homotopic to the slab inclusion.
    pub fn flow_projection(&self, gap: usize, endpoint: Endpoint) -> Vec<usize> {
        let target = &self.critical[Self::endpoint_level(gap, endpoint)].fiber;
        let mid = &self.middle[gap].fiber;
        mid.complex
            .provenance
            .iter()
            .map(|p| {
                let Provenance::Crossing { edge: (a, b), .. } = p else {
                    unreachable!("midpoint fibers contain only crossing vertices")
                };
                let (low, high) = match level_cmp(self.refined.value(*a), self.refined.value(*b)) {
                    Ordering::Less => (*a, *b),
                    _ => (*b, *a),
                };
                let end = match endpoint {
                    Endpoint::Lower => low,
                    Endpoint::Upper => high,
                };
                target.vertex_map.binary_search(&end).expect("edge end lies on the adjacent level")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplicial::SimplicialComplex;
    use crate::pl::function::VertexFunction;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sphere() -> PlInstance<BigRational> {
        let c = SimplicialComplex::from_maximal([vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        PlInstance::new(c, VertexFunction::new((0..4).map(|v| q(v, 1)).collect())).unwrap()
    }

    #[test]
    fn every_simplex_lies_in_a_half_gap() {
        let d = LevelDecomposition::new(&sphere()).unwrap();
        let mut cuts: Vec<BigRational> = d.levels.values().to_vec();
        cuts.extend(d.levels.midpoints().iter().cloned());
        cuts.sort();
        for s in d.refined.complex.iter() {
            let lo = s.iter().map(|&v| d.refined.value(v)).min().unwrap();
            let hi = s.iter().map(|&v| d.refined.value(v)).max().unwrap();
            assert!(!cuts.iter().any(|c| lo < c && c < hi), "{s:?} straddles a cut");
        }
    }

    #[test]
    fn fibers_match_slab_ends() {
        let d = LevelDecomposition::new(&sphere()).unwrap();
        assert_eq!(d.gap_count(), 3);
        for g in 0..3 {
            let (low, high) = &d.halves[g];
            assert_eq!(low.lower.complex(), d.critical[g].complex());
            assert_eq!(low.upper.complex(), d.middle[g].complex());
            assert_eq!(high.lower.complex(), d.middle[g].complex());
            assert_eq!(high.upper.complex(), d.critical[g + 1].complex());
        }
    }

    #[test]
    fn projection_is_simplicial() {
        let d = LevelDecomposition::new(&sphere()).unwrap();
        for g in 0..3 {
            for e in [Endpoint::Lower, Endpoint::Upper] {
                let map = d.flow_projection(g, e);
                let target = d.critical[LevelDecomposition::<BigRational>::endpoint_level(g, e)].complex();
                for s in d.middle[g].complex().iter() {
                    let mut image: Vec<usize> = s.iter().map(|&v| map[v]).collect();
                    image.sort();
                    image.dedup();
                    assert!(target.contains(&image));
                }
            }
        }
    }

    #[test]
    fn rejects_levels_missing_values() {
        let levels = CriticalSequence::new(vec![q(0, 1), q(1, 1), q(3, 1)]).unwrap();
        assert_eq!(LevelDecomposition::with_levels(&sphere(), levels), Err(Error::LevelsMissingVertexValue(2)));
        let empty = PlInstance::new(SimplicialComplex::empty(), VertexFunction::<BigRational>::new(vec![])).unwrap();
        assert_eq!(LevelDecomposition::new(&empty), Err(Error::EmptyInstance));
    }
}
