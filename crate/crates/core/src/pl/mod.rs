//! Piecewise-linear functions on complexes and their level structure.

pub mod decomposition;
pub mod function;
pub mod leveled;

pub use function::{critical_values, midpoint, CriticalSequence, Level, PlInstance, VertexFunction};
pub use leveled::{fiber_components, level_set, slab, Embedded, FiberComponents, LevelSet, LeveledComplex, Provenance, Slab};
