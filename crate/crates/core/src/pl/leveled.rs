//! Complexes subdivided along levels, with level sets and slabs as subcomplexes.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::function::{level_cmp, Level, PlInstance, VertexFunction};
use crate::complex::simplicial::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Where a vertex of a subdivided complex came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance<T> {
    Original(usize),
    /// Inserted on the edge `(low, high)` (labels of the complex it was cut from).
    Crossing { edge: (usize, usize), level: T },
}

/// A complex with vertex values and per-vertex provenance. Vertex labels index
/// both `function.values` and `provenance`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeveledComplex<T> {
    pub complex: SimplicialComplex,
    pub function: VertexFunction<T>,
    pub provenance: Vec<Provenance<T>>,
}

impl<T: Level> From<&PlInstance<T>> for LeveledComplex<T> {
    fn from(instance: &PlInstance<T>) -> Self {
        let provenance = (0..instance.function.values.len()).map(Provenance::Original).collect();
        Self {
            complex: instance.complex.clone(),
            function: instance.function.clone(),
            provenance,
        }
    }
}

impl<T: Level> LeveledComplex<T> {
    pub fn value(&self, v: usize) -> &T {
        self.function.value(v)
    }

    /// Splits every simplex whose vertex values straddle `level`. Existing
    /// labels are kept; one new vertex per crossing edge is appended, in
    /// lexicographic order of the edges.
    pub fn subdivide_at(&self, level: &T) -> Self {
        let side = |v: usize| level_cmp(self.value(v), level);
        let crossing_edges: Vec<(usize, usize)> = self
            .complex
            .simplices(1)
            .iter()
            .filter(|e| side(e[0]) != Ordering::Equal && side(e[1]) != Ordering::Equal && side(e[0]) != side(e[1]))
            .map(|e| (e[0], e[1]))
            .collect();
        if crossing_edges.is_empty() {
            return self.clone();
        }
        let base = self.function.values.len();
        let crossing: BTreeMap<(usize, usize), usize> =
            crossing_edges.iter().enumerate().map(|(i, &e)| (e, base + i)).collect();
        let cut = |a: usize, b: usize| crossing[&(a.min(b), a.max(b))];

        let mut pieces: Vec<Simplex> = Vec::new();
        for s in self.complex.maximal_simplices() {
            let (mut below, mut at, mut above) = (Vec::new(), Vec::new(), Vec::new());
            for &v in &s {
                match side(v) {
                    Ordering::Less => below.push(v),
                    Ordering::Equal => at.push(v),
                    Ordering::Greater => above.push(v),
                }
            }
            if below.is_empty() || above.is_empty() {
                pieces.push(s);
                continue;
            }
            // Lower piece: below × (above + apex), apex column maps back to `below`.
            for path in staircase_paths(below.len(), above.len() + 1) {
                let mut piece = at.clone();
                piece.extend(path.iter().map(|&(i, j)| if j < above.len() { cut(below[i], above[j]) } else { below[i] }));
                pieces.push(piece);
            }
            // Upper piece: (below + apex) × above, apex row maps back to `above`.
            for path in staircase_paths(below.len() + 1, above.len()) {
                let mut piece = at.clone();
                piece.extend(path.iter().map(|&(i, j)| if i < below.len() { cut(below[i], above[j]) } else { above[j] }));
                pieces.push(piece);
            }
        }

        let mut function = self.function.clone();
        let mut provenance = self.provenance.clone();
        for &edge in &crossing_edges {
            function.values.push(level.clone());
            provenance.push(Provenance::Crossing { edge, level: level.clone() });
        }
        Self {
            complex: SimplicialComplex::from_maximal(pieces),
            function,
            provenance,
        }
    }

    /// Subdivides at each level in turn.
    pub fn subdivide_at_all<'a>(&self, levels: impl IntoIterator<Item = &'a T>) -> Self
    where
        T: 'a,
    {
        levels.into_iter().fold(self.clone(), |lc, a| lc.subdivide_at(a))
    }

    /// The full subcomplex on vertices accepted by `keep`, relabeled to `0..k`.
    pub(crate) fn restrict(&self, keep: impl Fn(usize) -> bool) -> Embedded<T> {
        let sub = self.complex.induced(&keep);
        let vertex_map = sub.vertices();
        let local: BTreeMap<usize, usize> = vertex_map.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let complex = sub.relabeled(|v| local[&v]);
        let function = VertexFunction::new(vertex_map.iter().map(|&v| self.value(v).clone()).collect());
        let provenance = vertex_map.iter().map(|&v| self.provenance[v].clone()).collect();
        Embedded {
            complex: LeveledComplex {
                complex,
                function,
                provenance,
            },
            vertex_map,
        }
    }
}

/// `staircase_paths(m, n)`: the monotone lattice paths from `(0,0)` to
/// `(m-1, n-1)`, each as its list of grid points. Together they triangulate
/// the product of an `(m-1)`- and an `(n-1)`-simplex.
pub fn staircase_paths(m: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
    fn extend(m: usize, n: usize, path: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let (i, j) = *path.last().expect("path starts at the origin");
        if i + 1 == m && j + 1 == n {
            out.push(path.clone());
            return;
        }
        if j + 1 < n {
            path.push((i, j + 1));
            extend(m, n, path, out);
            path.pop();
        }
        if i + 1 < m {
            path.push((i + 1, j));
            extend(m, n, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 && n > 0 {
        extend(m, n, &mut vec![(0, 0)], &mut out);
    }
    out
}

/// A leveled subcomplex together with the labels its vertices carry in the
/// ambient complex (strictly increasing, so simplices map to simplices in order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedded<T> {
    pub complex: LeveledComplex<T>,
    pub vertex_map: Vec<usize>,
}

impl<T: Level> Embedded<T> {
    pub fn image(&self, s: &[usize]) -> Simplex {
        s.iter().map(|&v| self.vertex_map[v]).collect()
    }
}

/// The fiber over one level, embedded in the complex subdivided at that level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSet<T> {
    pub level: T,
    pub fiber: Embedded<T>,
}

impl<T: Level> LevelSet<T> {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.fiber.complex.complex
    }
}

/// Fiber at `level` in `lc.subdivide_at(level)`; also returns that subdivision.
pub fn level_set<T: Level>(lc: &LeveledComplex<T>, level: &T) -> (LeveledComplex<T>, LevelSet<T>) {
    let ambient = lc.subdivide_at(level);
    let fiber = level_set_in(&ambient, level);
    (ambient, fiber)
}

/// Fiber at `level` of a complex already subdivided there.
pub fn level_set_in<T: Level>(ambient: &LeveledComplex<T>, level: &T) -> LevelSet<T> {
    LevelSet {
        level: level.clone(),
        fiber: ambient.restrict(|v| level_cmp(ambient.value(v), level) == Ordering::Equal),
    }
}

/// Model of the preimage of `[low, high]` with both boundary fibers embedded in it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slab<T> {
    pub low: T,
    pub high: T,
    pub body: Embedded<T>,
    pub lower: LevelSet<T>,
    pub upper: LevelSet<T>,
}

/// Subdivides at `low` and `high` and keeps the part with values in between.
pub fn slab<T: Level>(lc: &LeveledComplex<T>, low: &T, high: &T) -> Result<Slab<T>> {
    if level_cmp(low, high) == Ordering::Greater {
        return Err(Error::InvertedInterval);
    }
    let ambient = lc.subdivide_at(low).subdivide_at(high);
    Ok(slab_in(&ambient, low, high))
}

/// Slab of a complex already subdivided at both ends.
pub fn slab_in<T: Level>(ambient: &LeveledComplex<T>, low: &T, high: &T) -> Slab<T> {
    let body = ambient.restrict(|v| {
        let x = ambient.value(v);
        level_cmp(x, low) != Ordering::Less && level_cmp(x, high) != Ordering::Greater
    });
    let lower = level_set_in(&body.complex, low);
    let upper = level_set_in(&body.complex, high);
    Slab {
        low: low.clone(),
        high: high.clone(),
        body,
        lower,
        upper,
    }
}

/// Connected components of a fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberComponents<T> {
    pub level: T,
    /// Component label of each fiber vertex (local labels).
    pub labels: Vec<usize>,
    /// Smallest vertex of each component; labels follow this order.
    pub representatives: Vec<usize>,
}

impl<T> FiberComponents<T> {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

pub fn fiber_components<T: Level>(fiber: &LevelSet<T>) -> FiberComponents<T> {
    let (labels, representatives) = components(fiber.complex());
    FiberComponents {
        level: fiber.level.clone(),
        labels,
        representatives,
    }
}

/// Union-find components of a complex whose vertices are `0..n`. Labels are
/// dense and ordered by the smallest vertex of each component.
pub(crate) fn components(c: &SimplicialComplex) -> (Vec<usize>, Vec<usize>) {
    let n = c.vertices().last().map_or(0, |v| v + 1);
    let mut uf = UnionFind::<usize>::new(n);
    for e in c.simplices(1) {
        uf.union(e[0], e[1]);
    }
    let mut label_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut representatives = Vec::new();
    let mut labels = vec![usize::MAX; n];
    for v in c.vertices() {
        let root = uf.find(v);
        let label = *label_of_root.entry(root).or_insert_with(|| {
            representatives.push(v);
            representatives.len() - 1
        });
        labels[v] = label;
    }
    (labels, representatives)
}
