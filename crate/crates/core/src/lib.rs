//! Twin-width laboratory.
//!
//! Exact trigraph contraction semantics on packed bit rows, contraction
//! sequence replay and verification, seeded random graphs, an exact
//! branch-and-bound solver for small graphs, the explicit contraction
//! schedule for dense random graphs, and the threshold and tail-bound
//! numerics that go with it.
//!
//! Vertices are 1-indexed in every public API.

pub mod bitset;
pub mod contraction;
pub mod numerics;
pub mod randgen;
pub mod solver;
pub mod strategy;
pub mod trigraph;

pub use contraction::{
    apply_sequence, apply_sequence_owned, class_histogram, parse_sequence, read_sequence,
    verify_width, verify_width_owned, write_sequence,
    ContractionSequence, SequenceError, SequenceTrace,
};
pub use trigraph::{EdgeColor, Trigraph, TrigraphError, VertexPartition};
