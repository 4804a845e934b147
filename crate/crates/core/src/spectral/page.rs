//! First and second pages of the two-column spectral sequence, and homology
//! assembled from the second page.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::group::AbelianGroup;
use crate::complex::lattice::{presented_cokernel, presented_kernel};
use crate::complex::matrix::IntegerMatrix;
use crate::complex::ring::Coefficients;
use crate::error::{Error, Result};
use crate::pl::function::{Level, PlInstance};
use crate::section::SectionPipeline;

/// Generators of a direct sum of groups: torsion ones first, then free
/// ones, summand by summand. Returns each generator's modulus (0 if free).
pub fn summand_moduli(groups: &[AbelianGroup]) -> Vec<BigInt> {
    groups
        .iter()
        .flat_map(|g| g.torsion.iter().cloned().chain(std::iter::repeat_n(BigInt::zero(), g.free_rank)))
        .collect()
}

/// Start offset of each summand, plus the total as a final entry.
pub fn summand_offsets(groups: &[AbelianGroup]) -> Vec<usize> {
    let mut out = vec![0];
    for g in groups {
        out.push(out.last().unwrap() + g.generator_count());
    }
    out
}

/// One row `q` of the first page: critical fiber groups (column 0), section
/// groups (column 1) and the differential between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Degree {
    pub degree: usize,
    pub critical: Vec<AbelianGroup>,
    pub sections: Vec<AbelianGroup>,
    /// Rows follow `critical`, columns follow `sections`.
    pub differential: IntegerMatrix,
}

impl E1Degree {
    pub fn critical_moduli(&self) -> Vec<BigInt> {
        summand_moduli(&self.critical)
    }

    pub fn section_moduli(&self) -> Vec<BigInt> {
        summand_moduli(&self.sections)
    }

    pub fn check_shape(&self) -> Result<()> {
        let rows = summand_offsets(&self.critical).pop().unwrap();
        let cols = summand_offsets(&self.sections).pop().unwrap();
        if self.differential.shape() != (rows, cols) {
            return Err(Error::ShapeMismatch(format!(
                "degree {}: differential is {}x{} but the summands have {rows} and {cols} generators",
                self.degree,
                self.differential.rows(),
                self.differential.cols()
            )));
        }
        let ring = self.critical.iter().chain(&self.sections).map(|g| g.ring).next();
        if let Some(ring) = ring {
            if self.critical.iter().chain(&self.sections).any(|g| g.ring != ring) {
                return Err(Error::ShapeMismatch(format!("degree {}: summands over different rings", self.degree)));
            }
        }
        // Each torsion generator must map to something it annihilates.
        let row_moduli = self.critical_moduli();
        for (j, t) in self.section_moduli().iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for (i, v) in self.differential.column(j).iter().enumerate() {
                let image = v * t;
                let m = &row_moduli[i];
                if !(image.is_zero() || (!m.is_zero() && image.is_multiple_of(m))) {
                    return Err(Error::ShapeMismatch(format!(
                        "degree {}: column {j} has order {t} but its image does not",
                        self.degree
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Page {
    pub ring: Coefficients,
    pub degrees: Vec<E1Degree>,
}

impl E1Page {
    pub fn degree(&self, q: usize) -> Option<&E1Degree> {
        self.degrees.iter().find(|d| d.degree == q)
    }

    pub fn check_shape(&self) -> Result<()> {
        for (i, d) in self.degrees.iter().enumerate() {
            if d.degree != i {
                return Err(Error::ShapeMismatch(format!("degrees must be listed as 0, 1, ...; found {} at position {i}", d.degree)));
            }
            if d.critical.iter().chain(&d.sections).any(|g| g.ring != self.ring) {
                return Err(Error::ShapeMismatch(format!("degree {}: summand ring differs from the page ring", d.degree)));
            }
            d.check_shape()?;
        }
        Ok(())
    }
}

/// First page for an instance whose gaps all pass the isomorphism check.
pub fn build_e1<T: Level>(pipeline: &SectionPipeline<T>) -> Result<E1Page> {
    let mut degrees = Vec::new();
    for q in 0..=pipeline.max_degree {
        let critical: Vec<AbelianGroup> = (0..pipeline.level_count()).map(|i| pipeline.critical_homology(i, q).group()).collect();
        let sections: Vec<AbelianGroup> = (0..pipeline.gap_count()).map(|g| pipeline.section_homology(g, q).group()).collect();
        let rows = summand_offsets(&critical);
        let cols = summand_offsets(&sections);
        let mut differential = IntegerMatrix::zeros(*rows.last().unwrap(), *cols.last().unwrap());
        for gap in 0..pipeline.gap_count() {
            let block = pipeline.d1_block(gap, q)?;
            for (i, j, v) in block.matrix.iter() {
                differential.set(rows[gap] + i, cols[gap] + j, v.clone());
            }
        }
        degrees.push(E1Degree {
            degree: q,
            critical,
            sections,
            differential,
        });
    }
    Ok(E1Page {
        ring: pipeline.ring,
        degrees,
    })
}

/// First page straight from an instance.
pub fn build_e1_for<T: Level>(instance: &PlInstance<T>, ring: Coefficients) -> Result<E1Page> {
    build_e1(&SectionPipeline::new(instance, ring)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Degree {
    pub degree: usize,
    /// Cokernel of the differential (column 0).
    pub critical: AbelianGroup,
    /// Kernel of the differential (column 1).
    pub section: AbelianGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Page {
    pub ring: Coefficients,
    pub degrees: Vec<E2Degree>,
}

pub fn compute_e2(page: &E1Page) -> Result<E2Page> {
    page.check_shape()?;
    let degrees = page
        .degrees
        .iter()
        .map(|d| {
            let rows = d.critical_moduli();
            let cols = d.section_moduli();
            E2Degree {
                degree: d.degree,
                critical: presented_cokernel(page.ring, &d.differential, &rows),
                section: presented_kernel(page.ring, &d.differential, &cols, &rows),
            }
        })
        .collect();
    Ok(E2Page { ring: page.ring, degrees })
}

/// Why the extension `0 -> E2[0,n] -> H_n -> E2[1,n-1] -> 0` splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitReason {
    /// The quotient is free over the integers.
    FreeQuotient,
    /// Coefficients form a field.
    FieldCoefficients,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssembledDegree {
    pub degree: usize,
    pub group: AbelianGroup,
    pub sub: AbelianGroup,
    pub quotient: AbelianGroup,
    pub split: SplitReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssembledHomology {
    pub ring: Coefficients,
    pub degrees: Vec<AssembledDegree>,
}

impl AssembledHomology {
    pub fn groups(&self) -> Vec<AbelianGroup> {
        self.degrees.iter().map(|d| d.group.clone()).collect()
    }

    /// Group in degree `n`, zero past the computed range.
    pub fn group(&self, n: usize) -> AbelianGroup {
        self.degrees.get(n).map_or_else(|| AbelianGroup::zero(self.ring), |d| d.group.clone())
    }
}

impl fmt::Display for AssembledHomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| format!("H{}={}", d.degree, d.group)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `H_n = E2[0,n] + E2[1,n-1]`. Degrees run up to one past the page's top
/// row; a trailing zero group there is dropped. Fails if a quotient carries
/// torsion over the integers, since the extension is then not determined.
pub fn assemble_homology(e2: &E2Page) -> Result<AssembledHomology> {
    let zero = AbelianGroup::zero(e2.ring);
    let top = e2.degrees.len();
    let mut degrees = Vec::new();
    for n in 0..=top {
        let sub = e2.degrees.get(n).map_or_else(|| zero.clone(), |d| d.critical.clone());
        let quotient = match n.checked_sub(1) {
            Some(m) => e2.degrees[m].section.clone(),
            None => zero.clone(),
        };
        let split = if e2.ring == Coefficients::Integers {
            if !quotient.is_free() {
                return Err(Error::UndeterminedExtension { degree: n });
            }
            SplitReason::FreeQuotient
        } else {
            SplitReason::FieldCoefficients
        };
        degrees.push(AssembledDegree {
            degree: n,
            group: sub.direct_sum(&quotient),
            sub,
            quotient,
            split,
        });
    }
    if degrees.len() > 1 && degrees.last().is_some_and(|d| d.group.is_zero()) {
        degrees.pop();
    }
    Ok(AssembledHomology { ring: e2.ring, degrees })
}

/// First page, second page and assembled homology in one call.
pub fn spectral_homology<T: Level>(pipeline: &SectionPipeline<T>) -> Result<(E1Page, E2Page, AssembledHomology)> {
    let e1 = build_e1(pipeline)?;
    let e2 = compute_e2(&e1)?;
    let h = assemble_homology(&e2)?;
    Ok((e1, e2, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::homology::betti_groups;
    use crate::complex::smith::smith_normal_form;
    use crate::fixtures;

    fn names(groups: &[AbelianGroup]) -> Vec<String> {
        groups.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn abstract_torus_page() {
        let e2 = compute_e2(&fixtures::torus_e1_page()).unwrap();
        for d in &e2.degrees {
            assert_eq!(d.critical.to_string(), "Z");
            assert_eq!(d.section.to_string(), "Z");
        }
        let h = assemble_homology(&e2).unwrap();
        assert_eq!(h.to_string(), "H0=Z H1=Z^2 H2=Z");
        assert!(h.degrees.iter().all(|d| d.split == SplitReason::FreeQuotient));
    }

    #[test]
    fn zero_differential_keeps_first_page() {
        let mut page = fixtures::torus_e1_page();
        for d in &mut page.degrees {
            d.differential = IntegerMatrix::zeros(d.differential.rows(), d.differential.cols());
        }
        let e2 = compute_e2(&page).unwrap();
        assert_eq!(e2.degrees[0].critical.to_string(), "Z^4");
        assert_eq!(e2.degrees[1].section.to_string(), "Z^4");
    }

    #[test]
    fn shape_errors() {
        let mut page = fixtures::torus_e1_page();
        page.degrees[1].sections.pop();
        assert!(matches!(compute_e2(&page), Err(Error::ShapeMismatch(_))));
        let mut page = fixtures::torus_e1_page();
        page.degrees[0].degree = 3;
        assert!(compute_e2(&page).is_err());
    }

    #[test]
    fn torsion_summands_are_presented() {
        let z = Coefficients::Integers;
        let page = E1Page {
            ring: z,
            degrees: vec![E1Degree {
                degree: 0,
                critical: vec![AbelianGroup::new(z, 1, &[2.into()])],
                sections: vec![AbelianGroup::free(z, 1)],
                differential: IntegerMatrix::from_rows(&[vec![1], vec![2]]),
            }],
        };
        let e2 = compute_e2(&page).unwrap();
        // coker of 1 -> Z/2 + Z sending 1 to (1, 2) is Z/4
        assert_eq!(e2.degrees[0].critical.to_string(), "Z/4");
        assert_eq!(e2.degrees[0].section.to_string(), "0");
        let bad = E1Page {
            ring: z,
            degrees: vec![E1Degree {
                degree: 0,
                critical: vec![AbelianGroup::free(z, 1)],
                sections: vec![AbelianGroup::new(z, 0, &[2.into()])],
                differential: IntegerMatrix::from_rows(&[vec![1]]),
            }],
        };
        assert!(compute_e2(&bad).is_err());
    }

    #[test]
    fn edge_and_circle_pages() {
        let z = Coefficients::Integers;
        let edge = build_e1_for(&fixtures::edge(), z).unwrap();
        assert_eq!(edge.degrees[0].differential.to_dense(), IntegerMatrix::from_rows(&[vec![-1], vec![1]]).to_dense());
        let circle = build_e1_for(&fixtures::circle_two_arcs(), z).unwrap();
        assert_eq!(circle.degrees[0].differential, IntegerMatrix::from_rows(&[vec![-1, -1], vec![1, 1]]));
        let e2 = compute_e2(&circle).unwrap();
        assert_eq!((e2.degrees[0].critical.to_string(), e2.degrees[0].section.to_string()), ("Z".into(), "Z".into()));
    }

    #[test]
    fn level_torus_pipeline_matches_abstract_page() {
        let z = Coefficients::Integers;
        let p = SectionPipeline::new(&fixtures::level_torus(), z).unwrap();
        let (e1, e2, h) = spectral_homology(&p).unwrap();
        let golden = fixtures::torus_e1_page();
        for q in 0..2 {
            let (ours, theirs) = (&e1.degrees[q], &golden.degrees[q]);
            assert_eq!(ours.critical, theirs.critical);
            assert_eq!(ours.sections, theirs.sections);
            let invariants = |m: &IntegerMatrix| smith_normal_form(m).invariant_factors();
            assert_eq!(invariants(&ours.differential), invariants(&theirs.differential));
        }
        // Degree 0 has canonical bases, so the matrix matches exactly.
        assert_eq!(e1.degrees[0].differential, golden.degrees[0].differential);
        assert!(e1.degrees[2].differential.is_zero());
        assert_eq!(e2.degrees[0].critical.to_string(), "Z");
        assert_eq!(h.to_string(), "H0=Z H1=Z^2 H2=Z");
    }

    #[test]
    fn pipeline_agrees_with_direct_homology() {
        for ring in [Coefficients::Integers, Coefficients::Rationals, Coefficients::Prime(2), Coefficients::Prime(3)] {
            for (name, inst) in fixtures::all() {
                let p = SectionPipeline::new(&inst, ring).unwrap();
                let (_, _, h) = spectral_homology(&p).unwrap();
                let top = inst.complex.dim().unwrap();
                let direct = betti_groups(&inst.complex, top + 1, ring);
                let ours: Vec<AbelianGroup> = (0..=top + 1).map(|n| h.group(n)).collect();
                assert_eq!(names(&ours), names(&direct), "{name} over {ring}");
            }
        }
    }

    #[test]
    fn point_instance() {
        let h = spectral_homology(&SectionPipeline::new(&fixtures::point(), Coefficients::Integers).unwrap()).unwrap().2;
        assert_eq!(h.to_string(), "H0=Z");
    }
}
