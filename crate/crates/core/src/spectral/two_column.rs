//! Brute-force check that the full first page, built over every chain of
//! levels, has a second page concentrated in columns 0 and 1 that matches
//! the one computed from successive gaps only.
//!
//! Sections over `[c_i, c_j]` are modeled by the strict fiber product of the
//! midpoint fibers of gaps `i..j` over the intermediate critical fibers,
//! glued by the flow projections. Those projections are order preserving on
//! every simplex, so the fiber product is again an ordered simplicial
//! complex whose simplices are chains in the product order.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::group::AbelianGroup;
use crate::complex::homology::{homology, HomologyPresentation};
use crate::complex::lattice::presented_homology;
use crate::complex::matrix::IntegerMatrix;
use crate::complex::ring::Coefficients;
use crate::complex::simplicial::{Simplex, SimplicialComplex};
use crate::error::{Endpoint, Error, Result};
use crate::pl::function::Level;
use crate::section::{map_chain, SectionPipeline};

use super::page::{build_e1, compute_e2};

/// A section-space model over `[c_first, c_last]`: vertices are tuples of
/// midpoint-fiber vertices, one per gap.
struct SectionModel {
    first: usize,
    complex: SimplicialComplex,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    homology: Vec<HomologyPresentation>,
}

impl SectionModel {
    fn last(&self) -> usize {
        self.first + self.tuples.first().map_or(0, Vec::len)
    }
}

/// Fiber product of `a -> c <- b` for ordered complexes and vertex maps that
/// are weakly increasing on every simplex. Returns the complex and the pair
/// behind each vertex, in lexicographic order.
pub fn fiber_product(
    a: &SimplicialComplex,
    a_map: &[usize],
    b: &SimplicialComplex,
    b_map: &[usize],
) -> (SimplicialComplex, Vec<(usize, usize)>) {
    let pairs: Vec<(usize, usize)> = a
        .vertices()
        .into_iter()
        .flat_map(|x| b.vertices().into_iter().filter(move |&y| a_map[x] == b_map[y]).map(move |y| (x, y)))
        .collect();
    let adjacent = |c: &SimplicialComplex, x: usize, y: usize| x == y || c.contains(&[x.min(y), x.max(y)]);
    let mut simplices: Vec<Simplex> = Vec::new();
    let mut chain: Vec<usize> = Vec::new();
    fn grow(
        pairs: &[(usize, usize)],
        a: &SimplicialComplex,
        b: &SimplicialComplex,
        adjacent: &dyn Fn(&SimplicialComplex, usize, usize) -> bool,
        chain: &mut Vec<usize>,
        out: &mut Vec<Simplex>,
    ) {
        out.push(chain.clone());
        let &last = chain.last().expect("chains are nonempty");
        let (la, lb) = pairs[last];
        for next in last + 1..pairs.len() {
            let (na, nb) = pairs[next];
            if na < la || nb < lb || !adjacent(a, la, na) || !adjacent(b, lb, nb) {
                continue;
            }
            let project = |pick: &dyn Fn(usize) -> usize, extra: usize| {
                let mut s: BTreeSet<usize> = chain.iter().map(|&k| pick(k)).collect();
                s.insert(extra);
                s.into_iter().collect::<Vec<_>>()
            };
            if a.contains(&project(&|k| pairs[k].0, na)) && b.contains(&project(&|k| pairs[k].1, nb)) {
                chain.push(next);
                grow(pairs, a, b, adjacent, chain, out);
                chain.pop();
            }
        }
    }
    for start in 0..pairs.len() {
        chain.push(start);
        grow(&pairs, a, b, &adjacent, &mut chain, &mut simplices);
        chain.pop();
    }
    (SimplicialComplex::from_maximal(simplices), pairs)
}

struct Verifier<'p, T> {
    pipeline: &'p SectionPipeline<T>,
    models: HashMap<(usize, usize), SectionModel>,
    low: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
}

impl<'p, T: Level> Verifier<'p, T> {
    fn new(pipeline: &'p SectionPipeline<T>) -> Self {
        let d = &pipeline.decomposition;
        let low = (0..pipeline.gap_count()).map(|g| d.flow_projection(g, Endpoint::Lower)).collect();
        let up = (0..pipeline.gap_count()).map(|g| d.flow_projection(g, Endpoint::Upper)).collect();
        let mut v = Self {
            pipeline,
            models: HashMap::new(),
            low,
            up,
        };
        let n = pipeline.level_count();
        for i in 0..n {
            for j in i + 1..n {
                let model = v.build(i, j);
                v.models.insert((i, j), model);
            }
        }
        v
    }

    fn build(&self, i: usize, j: usize) -> SectionModel {
        let mid = |g: usize| self.pipeline.decomposition.middle[g].complex().clone();
        let (complex, tuples) = if j == i + 1 {
            let c = mid(i);
            let tuples: Vec<Vec<usize>> = c.vertices().into_iter().map(|v| vec![v]).collect();
            (c, tuples)
        } else {
            let prefix = &self.models[&(i, j - 1)];
            let prefix_map: Vec<usize> = prefix.tuples.iter().map(|t| self.up[j - 2][*t.last().unwrap()]).collect();
            let (c, pairs) = fiber_product(&prefix.complex, &prefix_map, &mid(j - 1), &self.low[j - 1]);
            let tuples: Vec<Vec<usize>> = pairs
                .iter()
                .map(|&(t, v)| {
                    let mut t = prefix.tuples[t].clone();
                    t.push(v);
                    t
                })
                .collect();
            (c, tuples)
        };
        let index = tuples.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
        let homology = (0..=self.pipeline.max_degree).map(|q| homology(&complex, q, self.pipeline.ring)).collect();
        SectionModel {
            first: i,
            complex,
            tuples,
            index,
            homology,
        }
    }

    fn object_homology(&self, chain: &[usize], q: usize) -> &HomologyPresentation {
        match chain {
            [level] => self.pipeline.critical_homology(*level, q),
            _ => &self.models[&(chain[0], *chain.last().unwrap())].homology[q],
        }
    }

    fn object_complex(&self, chain: &[usize]) -> &SimplicialComplex {
        match chain {
            [level] => self.pipeline.decomposition.critical[*level].complex(),
            _ => &self.models[&(chain[0], *chain.last().unwrap())].complex,
        }
    }

    /// Vertex map of the face that drops position `drop` of `chain`.
    fn face_vertex_map(&self, chain: &[usize], drop: usize) -> Vec<usize> {
        let model = &self.models[&(chain[0], *chain.last().unwrap())];
        let p = chain.len() - 1;
        if p == 1 {
            return model
                .tuples
                .iter()
                .map(|t| if drop == 0 { self.up[model.last() - 1][t[t.len() - 1]] } else { self.low[model.first][t[0]] })
                .collect();
        }
        if drop != 0 && drop != p {
            return (0..model.tuples.len()).collect();
        }
        let (lo, hi) = if drop == 0 { (chain[1], chain[p]) } else { (chain[0], chain[p - 1]) };
        let target = &self.models[&(lo, hi)];
        model
            .tuples
            .iter()
            .map(|t| target.index[&t[lo - model.first..hi - model.first]])
            .collect()
    }

    fn face_matrix(&self, chain: &[usize], drop: usize, q: usize) -> IntegerMatrix {
        let mut face = chain.to_vec();
        face.remove(drop);
        let source = self.object_complex(chain);
        let target = self.object_complex(&face);
        let source_h = self.object_homology(chain, q);
        let target_h = self.object_homology(&face, q);
        let vertex_map = self.face_vertex_map(chain, drop);
        let mut m = IntegerMatrix::zeros(target_h.len(), source_h.len());
        for (j, g) in source_h.basis.iter().enumerate() {
            let image = map_chain(&g.chain, q, source, target, |v| vertex_map[v]);
            for (i, v) in target_h.coordinates(&image).into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }
}

fn chains(levels: usize, length: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, levels: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..levels {
            cur.push(v);
            rec(v + 1, levels, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, levels, length, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoColumnDegree {
    pub degree: usize,
    /// Second page of the full construction, column by column.
    pub full: Vec<AbelianGroup>,
    /// Cokernel and kernel of the successive-gap differential.
    pub successive_cokernel: AbelianGroup,
    pub successive_kernel: AbelianGroup,
    pub higher_columns_vanish: bool,
    pub cokernels_match: bool,
    pub kernels_match: bool,
}

impl TwoColumnDegree {
    pub fn matches(&self) -> bool {
        self.higher_columns_vanish && self.cokernels_match && self.kernels_match
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoColumnReport {
    pub ring: Coefficients,
    pub levels: usize,
    /// Number of chains of levels per column of the full first page.
    pub chain_counts: Vec<usize>,
    pub degrees: Vec<TwoColumnDegree>,
}

impl TwoColumnReport {
    pub fn matches(&self) -> bool {
        self.degrees.iter().all(TwoColumnDegree::matches)
    }
}

/// Builds the comparison. Only `NotReeb`-type failures are errors here.
pub fn two_column_report<T: Level>(pipeline: &SectionPipeline<T>) -> Result<TwoColumnReport> {
    let e2 = compute_e2(&build_e1(pipeline)?)?;
    let verifier = Verifier::new(pipeline);
    let n = pipeline.level_count();
    let ring = pipeline.ring;
    let columns: Vec<Vec<Vec<usize>>> = (1..=n).map(|len| chains(n, len)).collect();
    let mut degrees = Vec::new();
    for q in 0..=pipeline.max_degree {
        let moduli: Vec<Vec<BigInt>> = columns
            .iter()
            .map(|col| col.iter().flat_map(|c| verifier.object_homology(c, q).moduli()).collect())
            .collect();
        // differentials[p] : column p -> column p-1, for p >= 1
        let mut differentials: Vec<IntegerMatrix> = vec![IntegerMatrix::zeros(0, moduli[0].len())];
        for p in 1..columns.len() {
            let row_offsets = offsets(&verifier, &columns[p - 1], q);
            let col_offsets = offsets(&verifier, &columns[p], q);
            let index: HashMap<&Vec<usize>, usize> = columns[p - 1].iter().enumerate().map(|(k, c)| (c, k)).collect();
            let mut m = IntegerMatrix::zeros(moduli[p - 1].len(), moduli[p].len());
            for (k, chain) in columns[p].iter().enumerate() {
                for drop in 0..=p {
                    let mut face = chain.clone();
                    face.remove(drop);
                    let block = verifier.face_matrix(chain, drop, q);
                    let (r0, c0) = (row_offsets[index[&face]], col_offsets[k]);
                    for (i, j, v) in block.iter() {
                        let signed = if drop % 2 == 0 { v.clone() } else { -v };
                        let total = m.get(r0 + i, c0 + j) + signed;
                        m.set(r0 + i, c0 + j, total);
                    }
                }
            }
            let row_moduli = &moduli[p - 1];
            let m = IntegerMatrix::from_triples(
                m.rows(),
                m.cols(),
                m.iter().map(|(i, j, v)| (i, j, reduce(ring, v, &row_moduli[i]))).collect::<Vec<_>>(),
            );
            differentials.push(m);
        }
        let full: Vec<AbelianGroup> = (0..columns.len())
            .map(|p| {
                let incoming = differentials.get(p + 1).cloned().unwrap_or_else(|| IntegerMatrix::zeros(moduli[p].len(), 0));
                let out_moduli: Vec<BigInt> = if p == 0 { Vec::new() } else { moduli[p - 1].clone() };
                presented_homology(ring, &incoming, &differentials[p], &moduli[p], &out_moduli)
            })
            .collect();
        let zero = AbelianGroup::zero(ring);
        let successive = &e2.degrees[q];
        degrees.push(TwoColumnDegree {
            degree: q,
            higher_columns_vanish: full.iter().skip(2).all(AbelianGroup::is_zero),
            cokernels_match: full[0] == successive.critical,
            kernels_match: full.get(1).unwrap_or(&zero) == &successive.section,
            successive_cokernel: successive.critical.clone(),
            successive_kernel: successive.section.clone(),
            full,
        });
    }
    Ok(TwoColumnReport {
        ring,
        levels: n,
        chain_counts: columns.iter().map(Vec::len).collect(),
        degrees,
    })
}

/// Runs the comparison and fails with `ReportMismatch` if any degree disagrees.
pub fn verify_two_columns<T: Level>(pipeline: &SectionPipeline<T>) -> Result<TwoColumnReport> {
    let report = two_column_report(pipeline)?;
    if let Some(bad) = report.degrees.iter().find(|d| !d.matches()) {
        let shown: Vec<String> = bad.full.iter().map(ToString::to_string).collect();
        return Err(Error::ReportMismatch(format!(
            "degree {}: full second page [{}] against cokernel {} and kernel {}",
            bad.degree,
            shown.join(", "),
            bad.successive_cokernel,
            bad.successive_kernel
        )));
    }
    Ok(report)
}

fn offsets<T: Level>(v: &Verifier<'_, T>, column: &[Vec<usize>], q: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(column.len());
    let mut acc = 0;
    for c in column {
        out.push(acc);
        acc += v.object_homology(c, q).len();
    }
    out
}

fn reduce(ring: Coefficients, v: &BigInt, modulus: &BigInt) -> BigInt {
    use num_integer::Integer;
    use num_traits::Zero;
    let v = ring.reduce(v);
    if modulus.is_zero() {
        v
    } else {
        v.mod_floor(modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn chain_enumeration() {
        assert_eq!(chains(4, 2).len(), 6);
        assert_eq!(chains(4, 3).len(), 4);
        assert_eq!(chains(3, 1), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn fiber_product_of_intervals() {
        // Two edges over one edge, both by the identity: the diagonal.
        let e = SimplicialComplex::from_maximal([vec![0, 1]]);
        let (c, pairs) = fiber_product(&e, &[0, 1], &e, &[0, 1]);
        assert_eq!(pairs, vec![(0, 0), (1, 1)]);
        assert_eq!(c.count(1), 1);
        // Over a point, the fiber product is the full product: a square.
        let (sq, _) = fiber_product(&e, &[0, 0], &e, &[0, 0]);
        assert_eq!((sq.count(0), sq.count(1), sq.count(2)), (4, 5, 2));
    }

    #[test]
    fn torus_sections_between_non_successive_levels() {
        let p = SectionPipeline::new(&fixtures::level_torus(), Coefficients::Integers).unwrap();
        let v = Verifier::new(&p);
        // Flat strips at the figure-eight levels separate where flow lines
        // arrive from where they leave, so no section crosses those levels.
        assert!(v.models[&(0, 2)].complex.is_empty());
        assert_eq!(v.models[&(1, 2)].homology[0].free_rank, 2);
        let report = verify_two_columns(&p).unwrap();
        assert_eq!(report.chain_counts, vec![4, 6, 4, 1]);
        assert!(report.matches());
    }

    #[test]
    fn sphere_sections_cross_levels() {
        let p = SectionPipeline::new(&fixtures::sphere(), Coefficients::Integers).unwrap();
        let v = Verifier::new(&p);
        for key in [(0, 2), (1, 3), (0, 3)] {
            let h = &v.models[&key].homology;
            assert_eq!((h[0].free_rank, h[1].free_rank), (1, 1), "{key:?}");
        }
    }

    #[test]
    fn small_fixtures_pass() {
        for (name, inst) in fixtures::all() {
            if inst.critical_values().len() > 5 {
                continue;
            }
            for ring in [Coefficients::Integers, Coefficients::Prime(2)] {
                let p = SectionPipeline::new(&inst, ring).unwrap();
                if let Err(e) = verify_two_columns(&p) {
                    panic!("{name} over {ring}: {e}");
                }
            }
        }
    }
}
