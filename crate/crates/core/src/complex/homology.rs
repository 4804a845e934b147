//! Simplicial homology with an explicit cycle basis and a coordinate map.
//!
//! For `H_q`, the Smith form of `∂_q` yields a unimodular basis of the cycle
//! lattice; the Smith form of `∂_{q+1}` written in that basis splits it into
//! boundaries, torsion generators and free generators. The same change of
//! basis, read in reverse, gives a matrix sending any cycle to its homology
//! coordinates, so expressing a class in the basis is one matrix product.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::group::{bigint_list, AbelianGroup};
use super::lattice::rank_over;
use super::matrix::{dense_from_integer, dense_mul, Dense, IntegerMatrix};
use super::ring::{Coefficients, EuclideanDomain, Integers, PrimeField};
use super::simplicial::SimplicialComplex;
use super::smith::smith;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorOrder {
    Free,
    Torsion(#[serde(with = "bigint_string")] BigInt),
}

/// A homology generator represented by a cycle in the chain group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    #[serde(with = "bigint_list")]
    pub chain: Vec<BigInt>,
    pub order: GeneratorOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyPresentation {
    pub ring: Coefficients,
    pub degree: usize,
    pub free_rank: usize,
    #[serde(with = "bigint_list")]
    pub torsion: Vec<BigInt>,
    /// Torsion generators first (in divisibility order), then free ones.
    pub basis: Vec<Generator>,
    coordinate_map: IntegerMatrix,
}

impl HomologyPresentation {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup {
            ring: self.ring,
            free_rank: self.free_rank,
            torsion: self.torsion.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Dimension of the chain group the cycles live in.
    pub fn chain_rank(&self) -> usize {
        self.coordinate_map.cols()
    }

    /// Per-generator modulus: the torsion order, or 0 for free generators
    /// (over `Z/p` every coordinate is understood mod p).
    pub fn moduli(&self) -> Vec<BigInt> {
        self.basis
            .iter()
            .map(|g| match &g.order {
                GeneratorOrder::Free => BigInt::zero(),
                GeneratorOrder::Torsion(t) => t.clone(),
            })
            .collect()
    }

    /// Matrix from q-chains to homology coordinates; only meaningful on cycles.
    pub fn coordinate_map(&self) -> &IntegerMatrix {
        &self.coordinate_map
    }

    /// Coordinates of the class of `cycle` in the basis, reduced modulo each
    /// generator's order (and modulo p over a prime field).
    pub fn coordinates(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let raw = self.coordinate_map.mul_vec(cycle);
        raw.into_iter()
            .zip(self.moduli())
            .map(|(x, t)| {
                let x = self.ring.reduce(&x);
                if t.is_zero() {
                    x
                } else {
                    x.mod_floor(&t)
                }
            })
            .collect()
    }
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `H_q(c; ring)` with a tracked cycle basis.
pub fn homology(c: &SimplicialComplex, q: usize, ring: Coefficients) -> HomologyPresentation {
    if q == 0 {
        return degree_zero(c, ring);
    }
    let n = c.count(q);
    let down = c.boundary_matrix(q).expect("q >= 1");
    let up = c.boundary_matrix(q + 1).expect("q + 1 >= 1");
    from_boundaries(ring, q, n, &down, &up)
}

/// `H_0 .. H_dim` (just `H_0 = 0` for the empty complex).
pub fn homology_all(c: &SimplicialComplex, ring: Coefficients) -> Vec<HomologyPresentation> {
    let top = c.dim().unwrap_or(0);
    (0..=top).map(|q| homology(c, q, ring)).collect()
}

/// Groups only, for degrees `0..=max_degree`.
pub fn betti_groups(c: &SimplicialComplex, max_degree: usize, ring: Coefficients) -> Vec<AbelianGroup> {
    (0..=max_degree).map(|q| homology(c, q, ring).group()).collect()
}

/// `H_0` with one generator per connected component: the component's
/// smallest vertex. Components are ordered by that vertex.
fn degree_zero(c: &SimplicialComplex, ring: Coefficients) -> HomologyPresentation {
    let n = c.count(0);
    let mut uf = UnionFind::<usize>::new(n);
    for e in c.simplices(1) {
        let a = c.index_of(&e[..1]).expect("vertex");
        let b = c.index_of(&e[1..]).expect("vertex");
        uf.union(a, b);
    }
    let mut reps: Vec<usize> = Vec::new();
    let mut label_of_root = std::collections::HashMap::new();
    for v in 0..n {
        let r = uf.find(v);
        label_of_root.entry(r).or_insert_with(|| {
            reps.push(v);
            reps.len() - 1
        });
    }
    let mut coords = IntegerMatrix::zeros(reps.len(), n);
    for v in 0..n {
        coords.set(label_of_root[&uf.find(v)], v, BigInt::one());
    }
    let basis = reps
        .iter()
        .map(|&v| {
            let mut chain = vec![BigInt::zero(); n];
            chain[v] = BigInt::one();
            Generator {
                chain,
                order: GeneratorOrder::Free,
            }
        })
        .collect();
    HomologyPresentation {
        ring,
        degree: 0,
        free_rank: reps.len(),
        torsion: Vec::new(),
        basis,
        coordinate_map: coords,
    }
}

struct RawPresentation {
    chains: Vec<Vec<BigInt>>,
    orders: Vec<Option<BigInt>>,
    coordinates: Vec<Vec<BigInt>>,
}

fn raw_presentation<R: EuclideanDomain>(ring: &R, n: usize, down: &IntegerMatrix, up: &IntegerMatrix) -> RawPresentation {
    let s_down = smith(ring, dense_from_integer(ring, down), n);
    let r = s_down.rank;
    let k = n - r;
    // Cycle lattice basis (n x k) and its left inverse on cycles (k x n).
    let cycles: Dense<R::Elem> = s_down.v.iter().map(|row| row[r..].to_vec()).collect();
    let to_cycle_coords: Dense<R::Elem> = s_down.v_inv[r..].to_vec();
    let b = dense_mul(ring, &to_cycle_coords, &dense_from_integer(ring, up), n);
    let s_up = smith(ring, b, up.cols());
    let basis = if k == 0 { vec![Vec::new(); n] } else { dense_mul(ring, &cycles, &s_up.u_inv, k) };
    let coords = dense_mul(ring, &s_up.u, &to_cycle_coords, k);
    let mut out = RawPresentation {
        chains: Vec::new(),
        orders: Vec::new(),
        coordinates: Vec::new(),
    };
    for i in 0..k {
        let order = if i < s_up.rank {
            let d = &s_up.d[i][i];
            if ring.is_unit(d) {
                continue;
            }
            Some(ring.to_int(d))
        } else {
            None
        };
        out.chains.push(basis.iter().map(|row| ring.to_int(&row[i])).collect());
        out.orders.push(order);
        out.coordinates.push(coords[i].iter().map(|x| ring.to_int(x)).collect());
    }
    out
}

/// Homology in degree `q >= 1` from `∂_q` (`down`) and `∂_{q+1}` (`up`).
pub(crate) fn from_boundaries(ring: Coefficients, q: usize, n: usize, down: &IntegerMatrix, up: &IntegerMatrix) -> HomologyPresentation {
    let raw = match ring {
        Coefficients::Integers | Coefficients::Rationals => raw_presentation(&Integers, n, down, up),
        Coefficients::Prime(p) => raw_presentation(&PrimeField::new(p).expect("prime modulus"), n, down, up),
    };
    let mut basis = Vec::new();
    let mut rows = Vec::new();
    let mut torsion = Vec::new();
    for ((chain, order), coords) in raw.chains.into_iter().zip(raw.orders).zip(raw.coordinates) {
        let order = match order {
            Some(t) if ring == Coefficients::Integers => {
                torsion.push(t.clone());
                GeneratorOrder::Torsion(t)
            }
            // Torsion classes vanish rationally.
            Some(_) => continue,
            None => GeneratorOrder::Free,
        };
        basis.push(Generator { chain, order });
        rows.push(coords);
    }
    let free_rank = basis.iter().filter(|g| g.order == GeneratorOrder::Free).count();
    if ring == Coefficients::Rationals {
        let field_rank = n - rank_over(ring, down) - rank_over(ring, up);
        assert_eq!(field_rank, free_rank, "rational Betti number disagrees with the integral free rank");
    }
    let mut coordinate_map = IntegerMatrix::zeros(rows.len(), n);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            coordinate_map.set(i, j, v.clone());
        }
    }
    HomologyPresentation {
        ring,
        degree: q,
        free_rank,
        torsion,
        basis,
        coordinate_map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere() -> SimplicialComplex {
        SimplicialComplex::from_maximal([vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
    }

    fn projective_plane() -> SimplicialComplex {
        SimplicialComplex::from_maximal([
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![1, 3, 5],
            vec![2, 4, 5],
        ])
    }

    fn ranks(c: &SimplicialComplex, ring: Coefficients) -> Vec<String> {
        homology_all(c, ring).iter().map(|h| h.group().to_string()).collect()
    }

    #[test]
    fn point() {
        let c = SimplicialComplex::from_maximal([vec![0]]);
        let h = homology(&c, 0, Coefficients::Integers);
        assert_eq!(h.free_rank, 1);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn two_sphere() {
        assert_eq!(ranks(&sphere(), Coefficients::Integers), ["Z", "0", "Z"]);
    }

    #[test]
    fn projective_plane_torsion() {
        let c = projective_plane();
        assert_eq!(ranks(&c, Coefficients::Integers), ["Z", "Z/2", "0"]);
        assert_eq!(ranks(&c, Coefficients::Rationals), ["Q", "0", "0"]);
        assert_eq!(ranks(&c, Coefficients::Prime(2)), ["F2", "F2", "F2"]);
        assert_eq!(ranks(&c, Coefficients::Prime(3)), ["F3", "0", "0"]);
    }

    #[test]
    fn basis_vectors_are_cycles_and_coordinates_invert() {
        for ring in [Coefficients::Integers, Coefficients::Rationals, Coefficients::Prime(2), Coefficients::Prime(5)] {
            let c = projective_plane();
            for q in 1..=2 {
                let h = homology(&c, q, ring);
                let d = c.boundary_matrix(q).unwrap();
                for (i, g) in h.basis.iter().enumerate() {
                    let image = d.mul_vec(&g.chain);
                    assert!(image.iter().all(|x| ring.reduce(x).is_zero()), "not a cycle");
                    let mut unit = vec![BigInt::zero(); h.len()];
                    unit[i] = BigInt::one();
                    assert_eq!(h.coordinates(&g.chain), unit);
                }
            }
        }
    }

    #[test]
    fn boundaries_have_zero_coordinates() {
        let c = projective_plane();
        let h = homology(&c, 1, Coefficients::Integers);
        let d2 = c.boundary_matrix(2).unwrap();
        for j in 0..d2.cols() {
            assert!(h.coordinates(&d2.column(j)).iter().all(Zero::is_zero));
        }
        let twice: Vec<BigInt> = h.basis[0].chain.iter().map(|x| x * 2).collect();
        assert_eq!(h.coordinates(&twice), vec![BigInt::zero()]);
    }

    #[test]
    fn csaszar_torus() {
        let tris: Vec<Vec<usize>> = (0..7).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect();
        let c = SimplicialComplex::from_maximal(tris);
        assert_eq!((c.count(0), c.count(1), c.count(2)), (7, 21, 14));
        assert_eq!(ranks(&c, Coefficients::Integers), ["Z", "Z^2", "Z"]);
    }

    #[test]
    fn degree_zero_components() {
        let c = SimplicialComplex::from_maximal([vec![3, 4], vec![0, 1], vec![2]]);
        let h = homology(&c, 0, Coefficients::Integers);
        assert_eq!(h.free_rank, 3);
        // Representatives are the smallest vertices: 0, 2, 3.
        let reps: Vec<usize> = h.basis.iter().map(|g| g.chain.iter().position(|x| !x.is_zero()).unwrap()).collect();
        assert_eq!(reps, vec![0, 2, 3]);
        let coords = h.coordinates(&[0, 1, 0, 0, 1].map(BigInt::from));
        assert_eq!(coords, [1, 0, 1].map(BigInt::from).to_vec());
    }
}
