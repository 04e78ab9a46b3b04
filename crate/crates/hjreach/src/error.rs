//! Error type shared by the whole crate.

/// Errors produced by grid construction, field operations, dynamics
/// evaluation, and the PDE solve.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate extent in dim {dim}: max {max} must exceed min {min}")]
    DegenerateExtent { dim: usize, min: f64, max: f64 },

    #[error("too few nodes in dim {dim}: {count} < 3")]
    TooFewNodes { dim: usize, count: usize },

    #[error("grid too large: node count overflows the addressable range")]
    GridTooLarge,

    #[error("index {index} out of range for dim {dim} with {count} nodes")]
    IndexOutOfRange { dim: usize, index: i64, count: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("invalid dim {dim} for a {dims}-dimensional grid")]
    InvalidDim { dim: usize, dims: usize },

    #[error("coordinate {value} outside [{min}, {max}] in dim {dim}")]
    OutOfDomain {
        dim: usize,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("empty box: lower {lower} not below upper {upper} in dim {dim}")]
    EmptyBox { dim: usize, lower: f64, upper: f64 },

    #[error("invalid ignore_dims: {0}")]
    InvalidIgnoreDims(String),

    #[error("invalid input range: lower {lo} exceeds upper {hi}")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("speed must be positive, got {0}")]
    NonPositiveSpeed(f64),

    #[error("input component {index} = {value} outside [{lo}, {hi}]")]
    InputOutOfRange {
        index: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("non-finite value(s) in field data")]
    NonFiniteData,

    #[error("invalid solve config: {0}")]
    InvalidConfig(String),

    #[error(
        "numerical divergence: non-finite value after step {step} (dt={dt}) at node {node}, state {state:?}"
    )]
    NonFinite {
        step: usize,
        dt: f64,
        node: usize,
        state: Vec<f64>,
    },

    #[error("oracle grid too large: {nodes} nodes (limit {limit})")]
    OracleGridTooLarge { nodes: usize, limit: usize },

    #[error("need at least 2 samples per input dim, got {0}")]
    InvalidSampleCount(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
