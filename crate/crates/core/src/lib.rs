//! Combinatorial complexes and the tools to tell them apart: generators for
//! tori, strips and lifted graphs, covering maps, topological invariants,
//! color refinement and an exact isomorphism test.

pub mod complex;
pub mod covering;
pub mod dataset;
pub mod generators;
pub mod graph;
pub mod invariants;
pub mod iso;
pub mod lifting;
pub mod matrix;
pub mod refinement;

pub use complex::{Cell, CellId, CombinatorialComplex, ComplexError, NeighborhoodKind, NeighborhoodSpec};
pub use graph::SimpleGraph;
pub use invariants::Distance;
