//! Exact association-scheme machinery for Q-polynomial distance-regular
//! graphs: constructors for the classical families at desk scale, width and
//! dual-width analysis of vertex subsets, descendent enumeration, Leonard
//! parameter arrays, and quantum-matroid checks over the descendent poset.
//!
//! All arithmetic is exact (arbitrary-precision rationals); none of the
//! structural predicates depend on floating point.

pub mod analysis;
pub mod exact;
pub mod graphs;
pub mod jsonio;
pub mod leonard;
pub mod qmatroid;
pub mod report;
pub mod scheme;
pub mod subsets;

pub use analysis::{analyze, Analyzed};
pub use exact::{ExactMatrix, Rat};
pub use graphs::{DistanceRegularGraph, Graph};
