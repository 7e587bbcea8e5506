use thiserror::Error;

/// Errors raised by the geometry kernel, the volume and derivative engines,
/// and the verification harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point violates model invariant: {0}")]
    InvalidPoint(String),
    #[error("inputs coincide: {0}")]
    Coincident(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("planes are ultraparallel (<n1,n2> = {0})")]
    Ultraparallel(f64),
    #[error("distance undefined: <p,q> = {0} > -1")]
    NotTimelikeSeparated(f64),
    #[error("angle sum violation: alpha + beta + gamma = {0}, expected pi")]
    AngleSum(f64),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("malformed train track: {0}")]
    MalformedTrack(String),
    #[error("missing branch length for branch {0}")]
    MissingLength(usize),
    #[error("path is not closed: {0}")]
    NotClosed(String),
    #[error("inconsistent crossing list: {0}")]
    Crossing(String),
    #[error("chain boundary does not match surface: {0}")]
    UnmatchedBoundary(String),
    #[error("chart point outside rectangle: {0}")]
    OutsideChart(String),
    #[error("apex too close to a leaf: distance {distance} < floor {floor}")]
    ApexTooClose { distance: f64, floor: f64 },
    #[error("non-finite sample at t = {0}")]
    NonFinite(f64),
    #[error("extrapolation tableau diverged (indicator {indicator:e}); path may not be differentiable")]
    TableauDivergence { indicator: f64 },
    #[error("angle branch discontinuity on edge {0}")]
    BranchJump(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
