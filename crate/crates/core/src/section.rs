//! Section spaces between successive levels, modeled by midpoint fibers, and
//! the maps they induce on homology toward either adjacent critical fiber.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::group::AbelianGroup;
use crate::complex::homology::{homology, HomologyPresentation};
use crate::complex::lattice::solve_modulo;
use crate::complex::matrix::IntegerMatrix;
use crate::complex::ring::Coefficients;
use crate::complex::simplicial::SimplicialComplex;
use crate::error::{Endpoint, Error, Result};
use crate::pl::decomposition::LevelDecomposition;
use crate::pl::function::{CriticalSequence, Level, PlInstance};
use crate::pl::leveled::{components, fiber_components, slab_in, Embedded, FiberComponents, LeveledComplex};

/// Homology of the section space over one gap, read off its midpoint fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionSpaceModel<T> {
    pub gap: usize,
    pub interval: (T, T),
    pub midpoint: T,
    pub homology: HomologyPresentation,
    pub components: FiberComponents<T>,
}

/// A map on `H_q` from a midpoint fiber to one adjacent critical fiber, in
/// their tracked bases. Entries in torsion rows are reduced modulo the order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedMap {
    pub degree: usize,
    pub gap: usize,
    pub endpoint: Endpoint,
    pub domain: AbelianGroup,
    pub codomain: AbelianGroup,
    pub matrix: IntegerMatrix,
}

/// The differential restricted to one gap: columns indexed by the section
/// generators, rows by the lower fiber's generators followed by the upper's.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct D1Block {
    pub degree: usize,
    pub gap: usize,
    pub lower: InducedMap,
    pub upper: InducedMap,
    pub matrix: IntegerMatrix,
}

/// Fiber homology for every level and gap, plus the machinery to compare
/// fibers through half-gap slabs.
#[derive(Debug, Clone)]
pub struct SectionPipeline<T> {
    pub decomposition: LevelDecomposition<T>,
    pub ring: Coefficients,
    /// Homology is tracked in degrees `0..=max_degree` (the complex's dimension).
    pub max_degree: usize,
    critical: Vec<Vec<HomologyPresentation>>,
    middle: Vec<Vec<HomologyPresentation>>,
}

impl<T: Level> SectionPipeline<T> {
    pub fn new(instance: &PlInstance<T>, ring: Coefficients) -> Result<Self> {
        Self::from_decomposition(LevelDecomposition::new(instance)?, instance.complex.dim().unwrap_or(0), ring)
    }

    pub fn with_levels(instance: &PlInstance<T>, levels: CriticalSequence<T>, ring: Coefficients) -> Result<Self> {
        let d = LevelDecomposition::with_levels(instance, levels)?;
        Self::from_decomposition(d, instance.complex.dim().unwrap_or(0), ring)
    }

    fn from_decomposition(decomposition: LevelDecomposition<T>, max_degree: usize, ring: Coefficients) -> Result<Self> {
        let all = |c: &SimplicialComplex| (0..=max_degree).map(|q| homology(c, q, ring)).collect::<Vec<_>>();
        let critical = decomposition.critical.iter().map(|f| all(f.complex())).collect();
        let middle = decomposition.middle.iter().map(|f| all(f.complex())).collect();
        Ok(Self {
            decomposition,
            ring,
            max_degree,
            critical,
            middle,
        })
    }

    pub fn level_count(&self) -> usize {
        self.critical.len()
    }

    pub fn gap_count(&self) -> usize {
        self.middle.len()
    }

    pub fn critical_homology(&self, level: usize, q: usize) -> &HomologyPresentation {
        &self.critical[level][q]
    }

    pub fn section_homology(&self, gap: usize, q: usize) -> &HomologyPresentation {
        &self.middle[gap][q]
    }

    pub fn section_space(&self, gap: usize, q: usize) -> Result<SectionSpaceModel<T>> {
        self.decomposition.check_gap(gap)?;
        let levels = self.decomposition.levels.values();
        let mid = &self.decomposition.middle[gap];
        Ok(SectionSpaceModel {
            gap,
            interval: (levels[gap].clone(), levels[gap + 1].clone()),
            midpoint: mid.level.clone(),
            homology: self.middle[gap][q].clone(),
            components: fiber_components(mid),
        })
    }

    /// `(critical inclusion)_*^{-1} ∘ (midpoint inclusion)_*` through the
    /// half-gap slab. Fails with `NotReeb` when the critical inclusion is not
    /// an isomorphism on `H_q`.
    pub fn endpoint_map(&self, gap: usize, endpoint: Endpoint, q: usize) -> Result<InducedMap> {
        self.decomposition.check_gap(gap)?;
        let level = LevelDecomposition::<T>::endpoint_level(gap, endpoint);
        let half = self.decomposition.half(gap, endpoint);
        let (crit_in_slab, mid_in_slab) = match endpoint {
            Endpoint::Lower => (&half.lower.fiber, &half.upper.fiber),
            Endpoint::Upper => (&half.upper.fiber, &half.lower.fiber),
        };
        let crit_h = &self.critical[level][q];
        let mid_h = &self.middle[gap][q];
        let matrix = transport(&half.body, (mid_in_slab, mid_h), (crit_in_slab, crit_h), q, self.ring).map_err(|f| match f {
            TransportFailure::NotIsomorphic => Error::NotReeb { gap, endpoint, degree: q },
            TransportFailure::NoPreimage => Error::SolveFailure { gap, endpoint, degree: q },
        })?;
        Ok(InducedMap {
            degree: q,
            gap,
            endpoint,
            domain: mid_h.group(),
            codomain: crit_h.group(),
            matrix,
        })
    }

    /// The same map computed independently by pushing midpoint cycles along
    /// the straight-line flow onto the critical fiber.
    pub fn flow_map(&self, gap: usize, endpoint: Endpoint, q: usize) -> Result<InducedMap> {
        self.decomposition.check_gap(gap)?;
        let level = LevelDecomposition::<T>::endpoint_level(gap, endpoint);
        let projection = self.decomposition.flow_projection(gap, endpoint);
        let mid = self.decomposition.middle[gap].complex();
        let target = self.decomposition.critical[level].complex();
        let crit_h = &self.critical[level][q];
        let mid_h = &self.middle[gap][q];
        let matrix = coordinate_columns(crit_h, mid_h, |chain| map_chain(chain, q, mid, target, |v| projection[v]));
        Ok(InducedMap {
            degree: q,
            gap,
            endpoint,
            domain: mid_h.group(),
            codomain: crit_h.group(),
            matrix,
        })
    }

    /// Component of the critical fiber reached by each midpoint component,
    /// by union-find on the half-gap slab.
    pub fn component_map(&self, gap: usize, endpoint: Endpoint) -> Result<Vec<usize>> {
        self.decomposition.check_gap(gap)?;
        let half = self.decomposition.half(gap, endpoint);
        let (crit, mid) = match endpoint {
            Endpoint::Lower => (&half.lower, &half.upper),
            Endpoint::Upper => (&half.upper, &half.lower),
        };
        let (slab_labels, _) = components(&half.body.complex.complex);
        let (crit_labels, _) = components(crit.complex());
        let mut crit_of_slab: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, &v) in crit.fiber.vertex_map.iter().enumerate() {
            crit_of_slab.entry(slab_labels[v]).or_insert(crit_labels[i]);
        }
        let (_, mid_reps) = components(mid.complex());
        let map: Option<Vec<usize>> = mid_reps
            .iter()
            .map(|&r| crit_of_slab.get(&slab_labels[mid.fiber.vertex_map[r]]).copied())
            .collect();
        map.ok_or(Error::NotReeb { gap, endpoint, degree: 0 })
    }

    /// `t_* - s_*` on the gap's section generators.
    pub fn d1_block(&self, gap: usize, q: usize) -> Result<D1Block> {
        let lower = self.endpoint_map(gap, Endpoint::Lower, q)?;
        let upper = self.endpoint_map(gap, Endpoint::Upper, q)?;
        let lower_moduli = self.critical[gap][q].moduli();
        let upper_moduli = self.critical[gap + 1][q].moduli();
        let offset = lower.matrix.rows();
        let mut matrix = IntegerMatrix::zeros(offset + upper.matrix.rows(), lower.matrix.cols());
        for (i, j, v) in lower.matrix.iter() {
            matrix.set(i, j, reduce(self.ring, &-v, &lower_moduli[i]));
        }
        for (i, j, v) in upper.matrix.iter() {
            matrix.set(offset + i, j, v.clone());
        }
        debug_assert!(upper_moduli.len() == upper.matrix.rows());
        Ok(D1Block {
            degree: q,
            gap,
            lower,
            upper,
            matrix,
        })
    }

    /// Runs the isomorphism check for every gap, endpoint and degree.
    pub fn check_reeb(&self) -> Result<()> {
        for gap in 0..self.gap_count() {
            for endpoint in [Endpoint::Lower, Endpoint::Upper] {
                for q in 0..=self.max_degree {
                    self.endpoint_map(gap, endpoint, q)?;
                }
            }
        }
        Ok(())
    }
}

enum TransportFailure {
    NotIsomorphic,
    NoPreimage,
}

/// `(target inclusion)_*^{-1} ∘ (source inclusion)_*` on `H_q` of a slab;
/// fails unless the target inclusion is an isomorphism.
fn transport<T: Level>(
    slab: &Embedded<T>,
    (source, source_h): (&Embedded<T>, &HomologyPresentation),
    (target, target_h): (&Embedded<T>, &HomologyPresentation),
    q: usize,
    ring: Coefficients,
) -> std::result::Result<IntegerMatrix, TransportFailure> {
    let body = &slab.complex.complex;
    let slab_h = homology(body, q, ring);
    if target_h.group() != slab_h.group() {
        return Err(TransportFailure::NotIsomorphic);
    }
    let inclusion = coordinate_columns(&slab_h, target_h, |chain| push_chain(chain, q, target, body));
    let slab_moduli = slab_h.moduli();
    for j in 0..slab_h.len() {
        let mut unit = vec![BigInt::zero(); slab_h.len()];
        unit[j] = BigInt::one();
        solve_modulo(ring, &inclusion, &slab_moduli, &unit).ok_or(TransportFailure::NotIsomorphic)?;
    }
    let target_moduli = target_h.moduli();
    let mut matrix = IntegerMatrix::zeros(target_h.len(), source_h.len());
    for (j, g) in source_h.basis.iter().enumerate() {
        let y = slab_h.coordinates(&push_chain(&g.chain, q, source, body));
        let x = solve_modulo(ring, &inclusion, &slab_moduli, &y).ok_or(TransportFailure::NoPreimage)?;
        for (i, v) in x.into_iter().enumerate() {
            matrix.set(i, j, reduce(ring, &v, &target_moduli[i]));
        }
    }
    Ok(matrix)
}

/// Map on `H_q` from the fiber at `from` to the fiber at `to` through the
/// slab between them, in the bases of [`homology`] on each fiber. `ambient`
/// must already be subdivided at both levels. `None` if the inclusion of the
/// `to` fiber is not an isomorphism on `H_q`.
pub fn slab_transport<T: Level>(ambient: &LeveledComplex<T>, from: &T, to: &T, q: usize, ring: Coefficients) -> Option<IntegerMatrix> {
    let forward = from <= to;
    let band = if forward { slab_in(ambient, from, to) } else { slab_in(ambient, to, from) };
    let (source, target) = if forward { (&band.lower, &band.upper) } else { (&band.upper, &band.lower) };
    let source_h = homology(source.complex(), q, ring);
    let target_h = homology(target.complex(), q, ring);
    transport(&band.body, (&source.fiber, &source_h), (&target.fiber, &target_h), q, ring).ok()
}

fn reduce(ring: Coefficients, v: &BigInt, modulus: &BigInt) -> BigInt {
    let v = ring.reduce(v);
    if modulus.is_zero() {
        v
    } else {
        v.mod_floor(modulus)
    }
}

/// Columns: coordinates in `target` of the image of each generator of `source`.
fn coordinate_columns(
    target: &HomologyPresentation,
    source: &HomologyPresentation,
    push: impl Fn(&[BigInt]) -> Vec<BigInt>,
) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(target.len(), source.len());
    for (j, g) in source.basis.iter().enumerate() {
        for (i, v) in target.coordinates(&push(&g.chain)).into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

/// Pushes a q-chain of an embedded subcomplex into the ambient complex.
fn push_chain<T: Level>(chain: &[BigInt], q: usize, sub: &Embedded<T>, ambient: &SimplicialComplex) -> Vec<BigInt> {
    map_chain(chain, q, &sub.complex.complex, ambient, |v| sub.vertex_map[v])
}

/// Image of a q-chain under a simplicial vertex map. Collapsed simplices
/// vanish; others pick up the sign of the sorting permutation.
pub(crate) fn map_chain(
    chain: &[BigInt],
    q: usize,
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    vertex_map: impl Fn(usize) -> usize,
) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); target.count(q)];
    for (s, c) in source.simplices(q).iter().zip(chain) {
        if c.is_zero() {
            continue;
        }
        let mut image: Vec<usize> = s.iter().map(|&v| vertex_map(v)).collect();
        let mut inversions = 0usize;
        for i in 0..image.len() {
            for j in i + 1..image.len() {
                if image[i] > image[j] {
                    inversions += 1;
                }
            }
        }
        image.sort_unstable();
        if image.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let idx = target.index_of(&image).expect("vertex map is simplicial");
        if inversions.is_multiple_of(2) {
            out[idx] += c;
        } else {
            out[idx] -= c;
        }
    }
    out
}

/// Homology of the section space over `gap`.
pub fn section_space_homology<T: Level>(
    instance: &PlInstance<T>,
    gap: usize,
    q: usize,
    ring: Coefficients,
) -> Result<SectionSpaceModel<T>> {
    let p = SectionPipeline::new(instance, ring)?;
    for endpoint in [Endpoint::Lower, Endpoint::Upper] {
        p.decomposition.check_gap(gap)?;
        for k in 0..=p.max_degree {
            p.endpoint_map(gap, endpoint, k)?;
        }
    }
    p.section_space(gap, q)
}

pub fn induced_endpoint_map<T: Level>(
    instance: &PlInstance<T>,
    gap: usize,
    endpoint: Endpoint,
    q: usize,
    ring: Coefficients,
) -> Result<InducedMap> {
    SectionPipeline::new(instance, ring)?.endpoint_map(gap, endpoint, q)
}

pub fn d1_block<T: Level>(instance: &PlInstance<T>, gap: usize, q: usize, ring: Coefficients) -> Result<D1Block> {
    SectionPipeline::new(instance, ring)?.d1_block(gap, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_bigint::BigInt;

    fn abs_entries(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
        m.to_dense().into_iter().map(|r| r.into_iter().map(|v| v.magnitude().clone().into()).collect()).collect()
    }

    fn ints(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn torus_section_ranks() {
        let torus = fixtures::level_torus();
        let z = Coefficients::Integers;
        assert_eq!(section_space_homology(&torus, 1, 0, z).unwrap().homology.free_rank, 2);
        assert_eq!(section_space_homology(&torus, 0, 1, z).unwrap().homology.free_rank, 1);
        let edge = section_space_homology(&fixtures::edge(), 0, 0, z).unwrap();
        assert_eq!(edge.homology.free_rank, 1);
        assert_eq!(edge.components.count(), 1);
        assert!(section_space_homology(&fixtures::edge(), 1, 0, z).is_err());
    }

    #[test]
    fn torus_lowest_gap_maps() {
        let p = SectionPipeline::new(&fixtures::level_torus(), Coefficients::Integers).unwrap();
        let up = p.endpoint_map(0, Endpoint::Upper, 1).unwrap();
        assert_eq!(abs_entries(&up.matrix), ints(&[vec![1], vec![1]]));
        let down = p.endpoint_map(0, Endpoint::Lower, 1).unwrap();
        assert_eq!(down.matrix.shape(), (0, 1));
        // In the basis of the loops the two tubes map onto, the circle is their sum.
        let tubes = p.endpoint_map(1, Endpoint::Lower, 1).unwrap().matrix;
        let inverse_det = tubes.determinant();
        assert_eq!(inverse_det.magnitude(), &1u32.into());
        let signs: Vec<BigInt> = crate::complex::lattice::solve_modulo(Coefficients::Integers, &tubes, &[0.into(), 0.into()], &up.matrix.column(0)).unwrap();
        assert_eq!(signs.iter().map(|s| s.magnitude().clone()).collect::<Vec<_>>(), vec![1u32.into(), 1u32.into()]);
    }

    #[test]
    fn edge_maps() {
        let p = SectionPipeline::new(&fixtures::edge(), Coefficients::Integers).unwrap();
        assert_eq!(p.endpoint_map(0, Endpoint::Upper, 0).unwrap().matrix, IntegerMatrix::identity(1));
        let block = p.d1_block(0, 0).unwrap();
        assert_eq!(block.matrix.to_dense(), ints(&[vec![-1], vec![1]]));
    }

    #[test]
    fn torus_degree_zero_block() {
        let p = SectionPipeline::new(&fixtures::level_torus(), Coefficients::Integers).unwrap();
        let middle = p.d1_block(1, 0).unwrap();
        assert_eq!(middle.matrix.to_dense(), ints(&[vec![-1, -1], vec![1, 1]]));
    }

    #[test]
    fn slab_and_flow_routes_agree() {
        for ring in [Coefficients::Integers, Coefficients::Rationals, Coefficients::Prime(2)] {
            for (name, inst) in fixtures::all() {
                let p = SectionPipeline::new(&inst, ring).unwrap();
                for gap in 0..p.gap_count() {
                    for e in [Endpoint::Lower, Endpoint::Upper] {
                        for q in 0..=p.max_degree {
                            let a = p.endpoint_map(gap, e, q).unwrap();
                            let b = p.flow_map(gap, e, q).unwrap();
                            assert_eq!(a, b, "{name} gap {gap} {e} q={q} over {ring}");
                        }
                        let partition = p.component_map(gap, e).unwrap();
                        let m = p.endpoint_map(gap, e, 0).unwrap().matrix;
                        for (j, &target) in partition.iter().enumerate() {
                            let mut col = vec![BigInt::zero(); m.rows()];
                            col[target] = BigInt::one();
                            assert_eq!(m.column(j), col, "{name} gap {gap} {e}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rational_maps_match_integer_maps() {
        for (name, inst) in fixtures::all() {
            let z = SectionPipeline::new(&inst, Coefficients::Integers).unwrap();
            let q = SectionPipeline::new(&inst, Coefficients::Rationals).unwrap();
            for gap in 0..z.gap_count() {
                for k in 0..=z.max_degree {
                    assert_eq!(z.d1_block(gap, k).unwrap().matrix, q.d1_block(gap, k).unwrap().matrix, "{name}");
                }
            }
        }
    }
}
