//! The two-column spectral sequence of a level decomposition.

pub mod page;
pub mod two_column;

pub use page::{
    assemble_homology, build_e1, build_e1_for, compute_e2, spectral_homology, AssembledDegree, AssembledHomology, E1Degree, E1Page,
    E2Degree, E2Page, SplitReason,
};
pub use two_column::{fiber_product, two_column_report, verify_two_columns, TwoColumnDegree, TwoColumnReport};
