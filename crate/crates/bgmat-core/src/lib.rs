//! Biased graphs and the matroids they represent.
//!
//! A biased graph is a multigraph together with the set of its cycles declared
//! balanced, closed under the theta property. Such a graph determines a frame
//! matroid and a lift matroid on its edge set, and (more generally) a graph can
//! serve as a framework for a quasi-graphic matroid. This crate implements:
//!
//! * small multigraphs with parallel edges and loops ([`multigraph`]),
//! * circuit-collection matroids with rank, closure, minors ([`matroid`]),
//! * bias signatures, frame/lift circuits and rank formulas ([`bias`]),
//! * framework condition checking for quasi-graphic matroids ([`quasi`]),
//! * long lines, fixing sets, fixing graphs, pendant roll-ups ([`fixing`]),
//! * canonical representations and reconstruction ([`canonical`]),
//! * closed-form representation-count bounds ([`bounds`]),
//! * exhaustive representation search and excluded-minor scans ([`search`]).
//!
//! Everything is deterministic: identical inputs produce identical outputs,
//! bit for bit. The crate is `no_std` (alloc only); IO and file formats live
//! in the companion `bgmat-tools` crate.
//!
//! Scale envelope: ground sets up to 24 elements, graphs up to 12 vertices.
//! Edge and element sets are `u32` bitmasks throughout.

#![no_std]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod bias;
pub mod bounds;
pub mod canonical;
pub mod fixing;
pub mod fixtures;
pub mod matroid;
pub mod multigraph;
pub mod quasi;
pub mod search;

pub use bias::{BiasSignature, BiasedRepresentation, ClassTag};
pub use matroid::{ElemSet, Matroid};
pub use multigraph::{EdgeId, Ends, Multigraph, VertexId};
