//! Degree-based irregularity indices on trees.
//!
//! The crate provides graph and tree values with canonical forms and
//! graph6/edge-list I/O ([`graph`], [`format`]), degree-sequence tools
//! ([`degseq`]), the Albertson/sigma/Zagreb family of indices
//! ([`indices`]), named tree constructions ([`construct`]), exhaustive
//! free-tree enumeration with extremal search ([`enumerate`]) and a
//! registry of published bounds checked empirically over enumerated
//! trees ([`claims`]).

pub mod claims;
pub mod construct;
pub mod degseq;
pub mod enumerate;
pub mod format;
pub mod graph;
pub mod indices;

pub use degseq::{DegreeSequence, FibonacciConvention};
pub use graph::{Graph, GraphError, Tree};
pub use indices::{compute_bundle, HalfInteger, IndexBundle};
