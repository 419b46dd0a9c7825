use thiserror::Error;

/// Errors produced by shape construction, the solvers and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape is not full-dimensional in R^{dim}")]
    DegenerateShape { dim: usize },
    #[error("origin is not strictly inside the polytope")]
    OriginNotInterior,
    #[error("dimension {dim} > 3 requires explicit halfspaces")]
    DimensionTooHigh { dim: usize },
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("point cloud is empty")]
    EmptyCloud,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("annulus is degenerate (width or inner radius is zero)")]
    DegenerateAnnulus,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("rotation grid too large: {required} evaluations exceed cap {cap}")]
    GridTooLarge { required: u128, cap: u128 },
    #[error("slimness estimate did not stabilise after {retries} retries (f_hat = {f_hat})")]
    SlimnessDiverged { retries: usize, f_hat: f64 },
    #[error("direction {0:?} is degenerate for slab indexing")]
    DegenerateDirection([f64; 2]),
    #[error("operation requires a planar (2D) input, got dimension {0}")]
    NotPlanar(usize),
    #[error("facet {facet} received no interior sample; decrease delta")]
    FacetUnsampled { facet: usize },
    #[error("instance too large for the brute-force oracle: {0}")]
    TooLargeForOracle(String),
    #[error("linear program failed: {0}")]
    Numerical(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
