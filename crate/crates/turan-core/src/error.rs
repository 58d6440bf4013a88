//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while building, scanning, or evaluating.
#[derive(Debug, Error)]
pub enum TuranError {
    /// Vertex count outside the supported 3..=128 range.
    #[error("vertex count {n} outside supported range {min}..={max}")]
    VertexCount { n: usize, min: usize, max: usize },

    /// Triple is not strictly ascending or mentions a vertex >= n.
    #[error("triple ({a}, {b}, {c}) is not canonical for n = {n}: need a < b < c < n")]
    InvalidTriple {
        a: usize,
        b: usize,
        c: usize,
        n: usize,
    },

    /// Rank does not address any triple on this vertex set.
    #[error("rank {rank} out of range: only {count} triples exist")]
    RankOutOfRange { rank: usize, count: usize },

    /// Subset vertices not strictly ascending or out of range.
    #[error("k-subset {vertices:?} invalid for n = {n}: need strictly ascending vertices < n")]
    InvalidKSubset { vertices: Vec<usize>, n: usize },

    /// k outside what an operation supports.
    #[error("k = {k} unsupported for {op}: {need}")]
    InvalidArity {
        k: usize,
        op: &'static str,
        need: &'static str,
    },

    /// Strict construction requires (k-1) | n.
    #[error("strict construction needs (k-1) | n, but {km1} does not divide {n}")]
    Divisibility { n: usize, km1: usize },

    /// A scan or search space exceeds the configured budget.
    #[error("{what} needs {required} steps, over the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u64,
    },

    /// Sum sizes in the k-subset objectives explode past the vertex cap.
    #[error("n = {n} exceeds the cap of {cap} vertices for this evaluation; raise the cap explicitly to override")]
    VertexCapExceeded { n: usize, cap: usize },

    /// The constraint gradient vanished, so no multiplier is identifiable.
    #[error("constraint gradient norm {norm:e} below {threshold:e}; multiplier unidentifiable")]
    DegenerateGradient { norm: f64, threshold: f64 },

    /// An operation only defined on strict-mode instances got a balanced one.
    #[error("{op} requires a strict-mode instance")]
    StrictModeRequired { op: &'static str },

    /// Smoothing parameter outside its domain.
    #[error("invalid smoothing parameter: {what}")]
    InvalidParameter { what: String },

    /// Malformed hypergraph text input.
    #[error("hypergraph text, line {line}: {reason}")]
    Format { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
