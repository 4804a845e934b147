//! Homology of a simplicial complex with a piecewise-linear function,
//! computed from the fibers over critical levels and the section spaces
//! between them, plus the Reeb graph and word reductions in its edges.
//!
//! Level values are generic over [`pl::Level`]; the aliases below fix them to
//! exact rationals, which is what the pipeline is meant to run on.

pub mod complex;
pub mod error;
pub mod fixtures;
pub mod pl;
pub mod reeb;
pub mod section;
pub mod spectral;

pub use complex::group::AbelianGroup;
pub use complex::homology::{betti_groups, homology, homology_all, Generator, GeneratorOrder, HomologyPresentation};
pub use complex::matrix::IntegerMatrix;
pub use complex::ring::Coefficients;
pub use complex::simplicial::{validate_complex, ComplexViolation, Simplex, SimplicialComplex};
pub use complex::smith::{smith_normal_form, SmithDecomposition};
pub use error::{Endpoint, Error, Result};
pub use pl::{critical_values, fiber_components, level_set, slab, CriticalSequence, Level, VertexFunction};
pub use reeb::{build_reeb_graph, pi1_generators, reduce_word, reeb_betti, Letter, ReducedWord, Sign, SignedWord};
pub use section::{d1_block, induced_endpoint_map, section_space_homology, D1Block, InducedMap};
pub use spectral::{assemble_homology, build_e1, compute_e2, verify_two_columns, AssembledHomology, E1Page, E2Page};

/// Exact rational level values.
pub type Rational = num_rational::BigRational;
pub type Instance = pl::PlInstance<Rational>;
pub type LeveledComplex = pl::LeveledComplex<Rational>;
pub type LevelSet = pl::LevelSet<Rational>;
pub type Slab = pl::Slab<Rational>;
pub type FiberComponents = pl::FiberComponents<Rational>;
pub type LevelDecomposition = pl::decomposition::LevelDecomposition<Rational>;
pub type SectionPipeline = section::SectionPipeline<Rational>;
pub type SectionSpaceModel = section::SectionSpaceModel<Rational>;
pub type ReebGraph = reeb::ReebGraph<Rational>;
