use thiserror::Error;

/// Crate-wide error type. Vertex labels in messages are 1-indexed to match
/// the edge-list format; callers constructing variants convert at the site.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {label} out of range, expected 1..={n}")]
    VertexRange { label: usize, n: usize },

    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },

    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("deleting {deleted} vertices from a graph on {n} leaves nothing")]
    EmptyGraph { deleted: usize, n: usize },

    #[error("vertex {v} is isolated, normalized Laplacian undefined")]
    IsolatedVertex { v: usize },

    #[error(
        "{what} = {value} exceeds the size cap {cap} (HEISENSPEC_CAP raises it at your own risk)"
    )]
    SizeCap {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("eigensolver stalled: off-diagonal residual {residual:.3e} after {sweeps} sweeps")]
    NoConvergence { residual: f64, sweeps: usize },

    #[error("requested {requested} distinct k-sets but only {available} exist")]
    NotEnoughKSets { requested: u128, available: u128 },

    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
