use thiserror::Error;

use crate::complex::simplicial::ComplexViolation;

/// Which end of a gap an endpoint map or isomorphism check refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Lower,
    Upper,
}

impl std::fmt::Display for Endpoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Endpoint::Lower => write!(f, "lower"),
            Endpoint::Upper => write!(f, "upper"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid complex: {0}")]
    Complex(#[from] ComplexViolation),
    #[error("vertex {0} has no function value")]
    MissingValue(usize),
    #[error("function value of vertex {0} is not comparable to itself")]
    IncomparableValue(usize),
    #[error("the instance has no vertices")]
    EmptyInstance,
    #[error("interval endpoints out of order")]
    InvertedInterval,
    #[error("level sequence is not strictly increasing")]
    LevelsNotIncreasing,
    #[error("vertex {0} has a value missing from the level sequence")]
    LevelsMissingVertexValue(usize),
    #[error("gap index {0} out of range")]
    GapOutOfRange(usize),
    #[error(
        "not a Reeb function here: inclusion of the {endpoint} critical fiber of gap {gap} into its half-gap slab is not a homology isomorphism in degree {degree}"
    )]
    NotReeb { gap: usize, endpoint: Endpoint, degree: usize },
    #[error("no preimage for a homology class in gap {gap}, {endpoint} endpoint, degree {degree}")]
    SolveFailure { gap: usize, endpoint: Endpoint, degree: usize },
    #[error("page shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("extension in degree {degree} is not determined: the quotient has torsion")]
    UndeterminedExtension { degree: usize },
    #[error("two-column verification failed: {0}")]
    ReportMismatch(String),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(usize),
    #[error("letter {position} does not start where the previous letter ended")]
    NotComposable { position: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
