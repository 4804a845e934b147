pub mod group;
pub mod homology;
pub mod lattice;
pub mod matrix;
pub mod ring;
pub mod simplicial;
pub mod smith;
