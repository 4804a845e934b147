#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reebseq::reeb::{Letter, Sign, SignedWord};
use reebseq::{Instance, Rational, ReebGraph, SimplicialComplex, VertexFunction};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distinct rationals with small numerators and denominators.
pub fn injective_values(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = Rational::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=6).into());
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

/// A random complex of dimension at most 2 on `n` vertices: some triangles,
/// some loose edges, every vertex present.
pub fn random_complex(rng: &mut impl Rng, n: usize) -> SimplicialComplex {
    let mut gens: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    if n >= 3 {
        for _ in 0..rng.gen_range(0..=2 * n) {
            let mut t: Vec<usize> = (0..n).collect::<Vec<_>>().choose_multiple(rng, 3).copied().collect();
            t.sort_unstable();
            gens.push(t);
        }
    }
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=n) {
            let mut e: Vec<usize> = (0..n).collect::<Vec<_>>().choose_multiple(rng, 2).copied().collect();
            e.sort_unstable();
            gens.push(e);
        }
    }
    SimplicialComplex::from_maximal(gens)
}

pub fn random_instance(seed: u64, max_vertices: usize) -> Instance {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_vertices);
    let complex = random_complex(&mut r, n);
    let values = injective_values(&mut r, n);
    Instance::new(complex, VertexFunction::new(values)).expect("generated instance is valid")
}

/// A random complex with values drawn from a few levels, so flat simplices occur.
pub fn random_flat_instance(seed: u64, max_vertices: usize) -> Instance {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_vertices);
    let complex = random_complex(&mut r, n);
    let values = (0..n).map(|_| Rational::from_integer(r.gen_range(0i64..4).into())).collect();
    Instance::new(complex, VertexFunction::new(values)).expect("generated instance is valid")
}

/// A random leveled multigraph with at least one vertex per level.
pub fn random_reeb_graph(rng: &mut impl Rng) -> ReebGraph {
    let levels = rng.gen_range(2..=5);
    let values: Vec<Rational> = (0..levels as i64).map(|v| Rational::from_integer(v.into())).collect();
    let counts: Vec<usize> = (0..levels).map(|_| rng.gen_range(1..=3)).collect();
    let mut edges = Vec::new();
    for gap in 0..levels - 1 {
        for _ in 0..rng.gen_range(1..=4) {
            edges.push((gap, rng.gen_range(0..counts[gap]), rng.gen_range(0..counts[gap + 1])));
        }
    }
    ReebGraph::from_parts(&values, &counts, &edges).expect("edges climb one gap")
}

/// A random walk of `len` steps from `base`, biased toward backtracking so
/// that reductions happen.
pub fn random_word(rng: &mut impl Rng, g: &ReebGraph, base: usize, len: usize) -> SignedWord {
    let mut letters: Vec<Letter> = Vec::new();
    let mut at = base;
    for _ in 0..len {
        if let Some(&last) = letters.last() {
            if rng.gen_bool(0.3) {
                letters.push(last.inverse());
                let e = &g.edges[last.edge];
                at = if last.sign == Sign::Plus { e.source } else { e.target };
                continue;
            }
        }
        let options: Vec<Letter> = g
            .edges
            .iter()
            .enumerate()
            .flat_map(|(k, e)| {
                let mut v = Vec::new();
                if e.source == at {
                    v.push(Letter { edge: k, sign: Sign::Plus });
                }
                if e.target == at {
                    v.push(Letter { edge: k, sign: Sign::Minus });
                }
                v
            })
            .collect();
        let Some(&l) = options.choose(rng) else { break };
        let e = &g.edges[l.edge];
        at = if l.sign == Sign::Plus { e.target } else { e.source };
        letters.push(l);
    }
    SignedWord { base, letters }
}

/// Cancels a randomly chosen adjacent inverse pair until none is left.
pub fn reduce_in_random_order(rng: &mut impl Rng, w: &SignedWord) -> SignedWord {
    let mut letters = w.letters.clone();
    loop {
        let redexes: Vec<usize> = (0..letters.len().saturating_sub(1)).filter(|&i| letters[i].cancels(letters[i + 1])).collect();
        let Some(&i) = redexes.choose(rng) else { break };
        letters.drain(i..i + 2);
    }
    SignedWord { base: w.base, letters }
}
