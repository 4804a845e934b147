//! Small instances used by tests, examples and the shipped fixture files.

use num_rational::BigRational;

use crate::complex::group::AbelianGroup;
use crate::complex::matrix::IntegerMatrix;
use crate::complex::ring::Coefficients;
use crate::complex::simplicial::{Simplex, SimplicialComplex};
use crate::spectral::{E1Degree, E1Page};
use crate::pl::function::{PlInstance, VertexFunction};

pub fn rational(s: &str) -> BigRational {
    s.parse().unwrap_or_else(|_| panic!("bad rational literal {s}"))
}

fn build(maximal: Vec<Simplex>, values: &[&str]) -> PlInstance<BigRational> {
    let complex = SimplicialComplex::from_maximal(maximal);
    let function = VertexFunction::new(values.iter().map(|s| rational(s)).collect());
    PlInstance::new(complex, function).expect("fixture is well formed")
}

pub fn point() -> PlInstance<BigRational> {
    build(vec![vec![0]], &["0"])
}

pub fn edge() -> PlInstance<BigRational> {
    build(vec![vec![0, 1]], &["0", "1"])
}

pub fn two_edges() -> PlInstance<BigRational> {
    build(vec![vec![0, 1], vec![2, 3]], &["0", "1", "0", "1"])
}

/// A triangle boundary with two vertices at the bottom: one flat arc below,
/// two arcs climbing to the top vertex.
pub fn circle_two_arcs() -> PlInstance<BigRational> {
    build(vec![vec![0, 1], vec![0, 2], vec![1, 2]], &["0", "0", "1"])
}

pub fn full_triangle() -> PlInstance<BigRational> {
    build(vec![vec![0, 1, 2]], &["0", "1", "2"])
}

/// Boundary of the 3-simplex with height equal to the vertex label.
pub fn sphere() -> PlInstance<BigRational> {
    build(
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        &["0", "1", "2", "3"],
    )
}

/// The 7-vertex torus with generic injective heights.
pub fn csaszar_torus() -> PlInstance<BigRational> {
    let tris = (0..7).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect();
    build(tris, &["0", "13/4", "7/3", "5", "1/2", "4", "3/2"])
}

/// The 6-vertex projective plane; `H_1` has order-2 torsion.
pub fn projective_plane() -> PlInstance<BigRational> {
    let tris = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [1, 3, 5],
        [2, 4, 5],
    ];
    build(tris.iter().map(|t| t.to_vec()).collect(), &["0", "5/2", "1", "4", "3/2", "3"])
}

/// `n` circles sharing the origin; circle `k` has width `2/k` and the
/// function is the horizontal coordinate.
pub fn hawaiian(n: usize) -> PlInstance<BigRational> {
    let mut edges = Vec::new();
    let mut values = vec!["0".to_string()];
    for k in 1..=n {
        let (left, top, right) = (3 * k - 2, 3 * k - 1, 3 * k);
        edges.extend([vec![0, left], vec![left, top], vec![top, right], vec![0, right]]);
        values.extend([format!("-1/{k}"), "0".to_string(), format!("1/{k}")]);
    }
    let values: Vec<&str> = values.iter().map(String::as_str).collect();
    build(edges, &values)
}

/// Two poles joined by three arcs through the middle level.
pub fn theta() -> PlInstance<BigRational> {
    build(
        vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 4], vec![2, 4], vec![3, 4]],
        &["0", "1/2", "1/2", "1/2", "1"],
    )
}

/// A torus with four levels: a minimum, a figure-eight fiber, another
/// figure-eight fiber, a maximum. Between the middle levels the section
/// space is two circles. Each disk cap is a cone over a hexagon joined to
/// its figure-eight by a flat strip.
pub fn level_torus() -> PlInstance<BigRational> {
    let bottom = 0;
    let hex = |i: usize| 1 + i % 6;
    let b = |i: usize| 7 + i;
    let c = |i: usize| 12 + i;
    let top_hex = |i: usize| 17 + i % 6;
    let top = 23;
    let mut tris: Vec<Simplex> = Vec::new();
    let figure_eight = |f: &dyn Fn(usize) -> usize| [f(0), f(1), f(2), f(0), f(3), f(4)];
    let low_word = figure_eight(&b);
    let high_word = figure_eight(&c);
    for i in 0..6 {
        tris.push(vec![bottom, hex(i), hex(i + 1)]);
        tris.push(vec![hex(i), hex(i + 1), low_word[(i + 1) % 6]]);
        tris.push(vec![hex(i), low_word[i], low_word[(i + 1) % 6]]);
        tris.push(vec![top, top_hex(i), top_hex(i + 1)]);
        tris.push(vec![top_hex(i), top_hex(i + 1), high_word[(i + 1) % 6]]);
        tris.push(vec![top_hex(i), high_word[i], high_word[(i + 1) % 6]]);
    }
    // Tubes from the loop b0 b1 b2 to c1 c2 c0 and from b0 b3 b4 to c3 c4 c0.
    for (lo, hi) in [([b(0), b(1), b(2)], [c(1), c(2), c(0)]), ([b(0), b(3), b(4)], [c(3), c(4), c(0)])] {
        for i in 0..3 {
            let j = (i + 1) % 3;
            tris.push(vec![lo[i], lo[j], hi[j]]);
            tris.push(vec![lo[i], hi[i], hi[j]]);
        }
    }
    let mut values = vec!["0"];
    values.extend(["1"; 11]);
    values.extend(["2"; 11]);
    values.push("3");
    build(tris, &values)
}

/// The first page of a torus with four levels, given abstractly: point,
/// figure eight, figure eight, point, with one, two and one section circles.
pub fn torus_e1_page() -> E1Page {
    let z = Coefficients::Integers;
    let free = |ranks: &[usize]| ranks.iter().map(|&r| AbelianGroup::free(z, r)).collect::<Vec<_>>();
    let columns = |cols: &[[i64; 4]]| {
        let rows: Vec<Vec<i64>> = (0..4).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        IntegerMatrix::from_rows(&rows)
    };
    E1Page {
        ring: z,
        degrees: vec![
            E1Degree {
                degree: 0,
                critical: free(&[1, 1, 1, 1]),
                sections: free(&[1, 2, 1]),
                differential: columns(&[[-1, 1, 0, 0], [0, -1, 1, 0], [0, -1, 1, 0], [0, 0, -1, 1]]),
            },
            E1Degree {
                degree: 1,
                critical: free(&[0, 2, 2, 0]),
                sections: free(&[1, 2, 1]),
                differential: columns(&[[1, 1, 0, 0], [-1, 0, 1, 0], [0, -1, 0, 1], [0, 0, -1, -1]]),
            },
        ],
    }
}

/// Every named instance fixture.
pub fn all() -> Vec<(&'static str, PlInstance<BigRational>)> {
    let mut out = vec![
        ("point", point()),
        ("edge", edge()),
        ("two_edges", two_edges()),
        ("circle_two_arcs", circle_two_arcs()),
        ("full_triangle", full_triangle()),
        ("sphere", sphere()),
        ("csaszar_torus", csaszar_torus()),
        ("projective_plane", projective_plane()),
        ("theta", theta()),
        ("level_torus", level_torus()),
    ];
    const NAMES: [&str; 8] = ["hawaiian_1", "hawaiian_2", "hawaiian_3", "hawaiian_4", "hawaiian_5", "hawaiian_6", "hawaiian_7", "hawaiian_8"];
    for (k, name) in NAMES.iter().enumerate() {
        out.push((name, hawaiian(k + 1)));
    }
    out
}
