//! Finitely generated abelian groups (or vector spaces) by invariants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::matrix::IntegerMatrix;
use super::ring::Coefficients;
use super::smith::smith_normal_form;

/// `R^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with `t_1 | t_2 | ...`, all `t_i > 1`.
///
/// Over a field the torsion list is always empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub ring: Coefficients,
    pub free_rank: usize,
    #[serde(with = "bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn zero(ring: Coefficients) -> Self {
        Self {
            ring,
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(ring: Coefficients, rank: usize) -> Self {
        Self {
            ring,
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Normalizes an arbitrary list of cyclic orders (entries 0 and 1 are
    /// dropped) into invariant factors.
    pub fn new(ring: Coefficients, free_rank: usize, cyclic_orders: &[BigInt]) -> Self {
        let orders: Vec<BigInt> = cyclic_orders.iter().map(Signed::abs).filter(|t| *t > BigInt::one()).collect();
        if orders.is_empty() || ring != Coefficients::Integers {
            return Self::free(ring, free_rank);
        }
        let n = orders.len();
        let mut diag = IntegerMatrix::zeros(n, n);
        for (i, t) in orders.iter().enumerate() {
            diag.set(i, i, t.clone());
        }
        let torsion = smith_normal_form(&diag)
            .invariant_factors()
            .into_iter()
            .filter(|t| *t > BigInt::one())
            .collect();
        Self {
            ring,
            free_rank,
            torsion,
        }
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        assert_eq!(self.ring, other.ring, "direct sum across coefficient rings");
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::new(self.ring, self.free_rank + other.free_rank, &orders)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of generators in the minimal presentation.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(self.ring.to_string()),
            r => parts.push(format!("{}^{r}", self.ring)),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == t).count();
            if run == 1 {
                parts.push(format!("Z/{t}"));
            } else {
                parts.push(format!("(Z/{t})^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join("+"))
    }
}

pub(crate) mod bigint_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(ToString::to_string).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn invariant_factor_normalization() {
        let g = AbelianGroup::new(Coefficients::Integers, 1, &ints(&[2, 3, 1, 0]));
        assert_eq!(g.torsion, ints(&[6]));
        let h = AbelianGroup::new(Coefficients::Integers, 0, &ints(&[4, 2]));
        assert_eq!(h.torsion, ints(&[2, 4]));
    }

    #[test]
    fn display() {
        let z = Coefficients::Integers;
        assert_eq!(AbelianGroup::zero(z).to_string(), "0");
        assert_eq!(AbelianGroup::free(z, 1).to_string(), "Z");
        assert_eq!(AbelianGroup::free(z, 2).to_string(), "Z^2");
        assert_eq!(AbelianGroup::new(z, 1, &ints(&[2, 2])).to_string(), "Z+(Z/2)^2");
        assert_eq!(AbelianGroup::free(Coefficients::Prime(3), 2).to_string(), "F3^2");
        assert_eq!(AbelianGroup::free(Coefficients::Rationals, 1).to_string(), "Q");
    }

    #[test]
    fn torsion_dropped_over_fields() {
        let g = AbelianGroup::new(Coefficients::Rationals, 2, &ints(&[2]));
        assert!(g.is_free());
    }
}
