//! Extremal 3-uniform hypergraph toolkit.
//!
//! A family of vertex triples on [n] has the (3,k) property when no
//! k-vertex subset carries all of its C(k,3) triples. This crate builds
//! the cyclic-partition family that satisfies the property with few
//! excluded triples, verifies the property exhaustively, searches small
//! instances for the exact extremal value, and evaluates smoothed
//! counting objectives (with analytic gradients, a stationarity-
//! multiplier fit, and symmetry identities) over relaxed edge systems.
//!
//! All data-parallel paths run in fixed chunk order, so every result is
//! bit-identical across thread counts; the `parallel` feature (on by
//! default) provides the rayon lane, and `exec::force_sequential` routes
//! everything through the sequential lane at runtime.

pub mod binom;
pub mod construction;
pub mod error;
pub mod exec;
pub mod family;
pub mod ksubset;
pub mod search;
pub mod smoothing;
pub mod triple;
pub mod verifier;

pub use construction::{
    build_turan, complement_count_closed, density_limit, density_table, BuildMode, DensityRow,
    TuranInstance,
};
pub use error::TuranError;
pub use family::TripleFamily;
pub use ksubset::{ksubset_count, ksubsets, KSubset};
pub use search::{max_kfree, min_cover, SearchResult, DEFAULT_NODE_BUDGET};
pub use triple::{rank_triple, unrank_triple, UniformTriple, VertexSetSize};
pub use verifier::{
    is_turan_property, is_turan_property_with, max_edges_in_any_ksubset, ScanOptions, VerifyReport,
    DEFAULT_SCAN_BUDGET,
};
