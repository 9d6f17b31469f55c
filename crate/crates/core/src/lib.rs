//! Exact circular colorings of iterated Mycielski graphs.
//!
//! - [`graph`]: simple undirected graphs, independence and chromatic numbers, edge-list IO.
//! - [`mycielski`]: `M^t(G)` with structured vertex names, derived sets and roots.
//! - [`circular`]: `(k,d)`-colorings and partitions, the exact `χ_c` solver, normal forms.
//! - [`forest`]: the root digraphs `F°_t`, `F_t`, their outtrees and 3-cut sets.
//! - [`harness`]: exact threshold arithmetic and checks of bounds against solver output.

pub mod circular;
pub mod error;
pub mod forest;
pub mod graph;
pub mod harness;
pub mod mycielski;

pub use error::{Error, Result};
