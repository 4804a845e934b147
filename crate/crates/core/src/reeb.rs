//! The Reeb graph of a level decomposition and words in its edges.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::complex::ring::Coefficients;
use crate::complex::simplicial::SimplicialComplex;
use crate::error::{Endpoint, Error, Result};
use crate::pl::function::Level;
use crate::pl::leveled::fiber_components;
use crate::section::SectionPipeline;

/// A component of a critical fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReebVertex<T> {
    pub level_index: usize,
    pub component: usize,
    pub level: T,
}

/// A component of a gap's section space, running from its component in the
/// lower critical fiber (`source`) to the one in the upper fiber (`target`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReebEdge {
    pub gap: usize,
    pub component: usize,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReebGraph<T> {
    pub vertices: Vec<ReebVertex<T>>,
    pub edges: Vec<ReebEdge>,
}

impl<T: Level> ReebGraph<T> {
    /// Checks that every edge climbs exactly one gap.
    pub fn new(vertices: Vec<ReebVertex<T>>, edges: Vec<ReebEdge>) -> Result<Self> {
        for (k, e) in edges.iter().enumerate() {
            let (s, t) = (vertices.get(e.source), vertices.get(e.target));
            match (s, t) {
                (Some(s), Some(t)) if s.level_index == e.gap && t.level_index == e.gap + 1 => {}
                _ => return Err(Error::UnknownEdge(k)),
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Vertices are fiber components level by level; edges are midpoint
    /// components gap by gap, attached through the degree-0 endpoint maps.
    pub fn from_pipeline(pipeline: &SectionPipeline<T>) -> Result<Self> {
        let d = &pipeline.decomposition;
        let mut first_vertex = Vec::new();
        let mut vertices = Vec::new();
        for (i, fiber) in d.critical.iter().enumerate() {
            first_vertex.push(vertices.len());
            for component in 0..fiber_components(fiber).count() {
                vertices.push(ReebVertex {
                    level_index: i,
                    component,
                    level: fiber.level.clone(),
                });
            }
        }
        let mut edges = Vec::new();
        for gap in 0..pipeline.gap_count() {
            let lower = pipeline.endpoint_map(gap, Endpoint::Lower, 0)?.matrix;
            let upper = pipeline.endpoint_map(gap, Endpoint::Upper, 0)?.matrix;
            let hit = |m: &crate::complex::matrix::IntegerMatrix, j: usize| {
                m.column(j).iter().position(|v| !v.is_zero()).expect("every section component reaches both ends")
            };
            for component in 0..lower.cols() {
                edges.push(ReebEdge {
                    gap,
                    component,
                    source: first_vertex[gap] + hit(&lower, component),
                    target: first_vertex[gap + 1] + hit(&upper, component),
                });
            }
        }
        Self::new(vertices, edges)
    }

    /// Builds a graph from level values, the number of components at each
    /// level, and edges given as `(gap, lower component, upper component)`.
    /// Edges in each gap are numbered in the order given.
    pub fn from_parts(levels: &[T], counts: &[usize], edges: &[(usize, usize, usize)]) -> Result<Self> {
        let mut first = vec![0];
        let mut vertices = Vec::new();
        for (i, (level, &n)) in levels.iter().zip(counts).enumerate() {
            for component in 0..n {
                vertices.push(ReebVertex {
                    level_index: i,
                    component,
                    level: level.clone(),
                });
            }
            first.push(vertices.len());
        }
        let mut per_gap = vec![0; levels.len()];
        let mut out = Vec::new();
        for (k, &(gap, lo, hi)) in edges.iter().enumerate() {
            if gap + 1 >= levels.len() || lo >= counts[gap] || hi >= counts[gap + 1] {
                return Err(Error::UnknownEdge(k));
            }
            out.push(ReebEdge {
                gap,
                component: per_gap[gap],
                source: first[gap] + lo,
                target: first[gap + 1] + hi,
            });
            per_gap[gap] += 1;
        }
        Self::new(vertices, out)
    }

    /// Index of the vertex for component `component` at level `level_index`.
    pub fn vertex_id(&self, level_index: usize, component: usize) -> Option<usize> {
        self.vertices.iter().position(|v| v.level_index == level_index && v.component == component)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Component label of every vertex (dense, ordered by smallest vertex).
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.source, e.target);
        }
        let mut labels = vec![usize::MAX; self.vertices.len()];
        let mut roots = Vec::new();
        for (v, label) in labels.iter_mut().enumerate() {
            let r = uf.find(v);
            *label = roots.iter().position(|&x| x == r).unwrap_or_else(|| {
                roots.push(r);
                roots.len() - 1
            });
        }
        labels
    }

    /// The graph as a simplicial complex, with every edge subdivided once so
    /// parallel edges stay distinct.
    pub fn to_complex(&self) -> SimplicialComplex {
        let n = self.vertices.len();
        let mut simplices: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        for (k, e) in self.edges.iter().enumerate() {
            simplices.push(vec![e.source, n + k]);
            simplices.push(vec![e.target, n + k]);
        }
        SimplicialComplex::from_maximal(simplices)
    }

    fn letter_ends(&self, letter: &Letter) -> Result<(usize, usize)> {
        let e = self.edges.get(letter.edge).ok_or(Error::UnknownEdge(letter.edge))?;
        Ok(match letter.sign {
            Sign::Plus => (e.source, e.target),
            Sign::Minus => (e.target, e.source),
        })
    }

    /// Checks composability and returns the vertex the word ends at.
    pub fn word_end(&self, word: &SignedWord) -> Result<usize> {
        self.check_vertex(word.base)?;
        let mut at = word.base;
        for (position, letter) in word.letters.iter().enumerate() {
            let (from, to) = self.letter_ends(letter)?;
            if from != at {
                return Err(Error::NotComposable { position });
            }
            at = to;
        }
        Ok(at)
    }

    /// Breadth-first spanning tree of the component of `base`: the edge used
    /// to reach each vertex, exploring neighbors in order of vertex label.
    fn spanning_tree(&self, base: usize) -> Vec<Option<Option<usize>>> {
        let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            incident[e.source].push((e.target, k));
            incident[e.target].push((e.source, k));
        }
        for list in &mut incident {
            list.sort_unstable();
        }
        // reached[v] = Some(None) for the base, Some(Some(edge)) for others.
        let mut reached: Vec<Option<Option<usize>>> = vec![None; self.vertices.len()];
        reached[base] = Some(None);
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for &(w, k) in &incident[v] {
                if reached[w].is_none() {
                    reached[w] = Some(Some(k));
                    queue.push_back(w);
                }
            }
        }
        reached
    }

    /// Tree path from `base` to `v`.
    fn tree_path(&self, tree: &[Option<Option<usize>>], v: usize) -> Vec<Letter> {
        let mut letters = Vec::new();
        let mut at = v;
        while let Some(Some(k)) = tree[at] {
            let e = &self.edges[k];
            // Walking from the parent toward `at`.
            let (parent, sign) = if e.target == at { (e.source, Sign::Plus) } else { (e.target, Sign::Minus) };
            letters.push(Letter { edge: k, sign });
            at = parent;
        }
        letters.reverse();
        letters
    }
}

/// Number of components and rank of the cycle space.
pub fn reeb_betti<T: Level>(g: &ReebGraph<T>) -> (usize, usize) {
    let b0 = g.components().into_iter().max().map_or(0, |m| m + 1);
    (b0, g.edges.len() + b0 - g.vertices.len())
}

/// Free generators of the fundamental group at `base`: one reduced loop per
/// edge outside the breadth-first spanning tree.
pub fn pi1_generators<T: Level>(g: &ReebGraph<T>, base: usize) -> Result<Vec<SignedWord>> {
    g.check_vertex(base)?;
    let tree = g.spanning_tree(base);
    let tree_edges: Vec<bool> = {
        let mut used = vec![false; g.edges.len()];
        for k in tree.iter().flatten().flatten() {
            used[*k] = true;
        }
        used
    };
    let mut out = Vec::new();
    for (k, e) in g.edges.iter().enumerate() {
        if tree_edges[k] || tree[e.source].is_none() {
            continue;
        }
        let mut letters = g.tree_path(&tree, e.source);
        letters.push(Letter { edge: k, sign: Sign::Plus });
        letters.extend(SignedWord { base, letters: g.tree_path(&tree, e.target) }.inverse_letters());
        let word = SignedWord { base, letters };
        out.push(reduce_word(g, &word)?.word);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub edge: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Letter {
            edge: self.edge,
            sign: self.sign.flip(),
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.edge == other.edge && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "{}{}", self.edge, s)
    }
}

impl FromStr for Letter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (digits, sign) = match s.strip_suffix('+') {
            Some(d) => (d, Sign::Plus),
            None => match s.strip_suffix('-') {
                Some(d) => (d, Sign::Minus),
                None => return Err(format!("letter {s:?} must end in + or -")),
            },
        };
        let edge = digits.parse().map_err(|_| format!("letter {s:?} must start with an edge number"))?;
        Ok(Letter { edge, sign })
    }
}

/// A path in the graph starting at `base`, one edge traversal per letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedWord {
    pub base: usize,
    pub letters: Vec<Letter>,
}

impl SignedWord {
    /// Parses letters such as `"0+ 2+ 1-"`.
    pub fn parse(base: usize, text: &str) -> std::result::Result<Self, String> {
        let letters = text.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>()?;
        Ok(Self { base, letters })
    }

    fn inverse_letters(&self) -> Vec<Letter> {
        self.letters.iter().rev().map(|l| l.inverse()).collect()
    }

    /// The reverse path, starting where this word ends.
    pub fn inverse<T: Level>(&self, g: &ReebGraph<T>) -> Result<Self> {
        Ok(SignedWord {
            base: g.word_end(self)?,
            letters: self.inverse_letters(),
        })
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn concat<T: Level>(&self, other: &SignedWord, g: &ReebGraph<T>) -> Result<Self> {
        if g.word_end(self)? != other.base {
            return Err(Error::NotComposable { position: self.letters.len() });
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().copied());
        Ok(SignedWord { base: self.base, letters })
    }

    /// Number of maximal runs of letters with the same sign (monotone
    /// stretches through successive gaps).
    pub fn run_length(&self) -> usize {
        let mut runs = 0;
        let mut last = None;
        for l in &self.letters {
            if last != Some(l.sign) {
                runs += 1;
                last = Some(l.sign);
            }
        }
        runs
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        write!(f, "@{} [{}]", self.base, parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedWord {
    pub word: SignedWord,
    pub run_length: usize,
}

/// Cancels adjacent inverse pairs until none remain.
pub fn reduce_word<T: Level>(g: &ReebGraph<T>, w: &SignedWord) -> Result<ReducedWord> {
    g.word_end(w)?;
    let mut stack: Vec<Letter> = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    let word = SignedWord { base: w.base, letters: stack };
    Ok(ReducedWord {
        run_length: word.run_length(),
        word,
    })
}

/// Reeb graph of an instance, using integer coefficients for the π₀ maps.
pub fn build_reeb_graph<T: Level>(instance: &crate::pl::function::PlInstance<T>) -> Result<ReebGraph<T>> {
    ReebGraph::from_pipeline(&SectionPipeline::new(instance, Coefficients::Integers)?)
}
