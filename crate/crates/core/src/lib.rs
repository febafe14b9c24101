//! Proper labelings of polygon families and the hyperbolic surfaces they
//! glue into.
//!
//! The crate builds minimal-area surfaces tiled by regular triangles of
//! angle `2π/k` for every `k >= 7`, verifies them combinatorially, computes
//! their topology, and provides exhaustive-search oracles for small sizes.

pub mod bases;
pub mod builders;
pub mod error;
pub mod geom;
pub mod io;
pub mod labeling;
pub mod rewrite;
pub mod search;
pub mod surface;

mod union_find;

pub use error::{Error, Result};
pub use labeling::{
    canonicalize, edges, oriented, pairing, verify, Condition, EdgeRecord, EdgeRef, Label,
    Labeling, PairKind, PairingTable, SizeBound, VerificationReport, Violation,
};
pub(crate) use union_find::UnionFind;
