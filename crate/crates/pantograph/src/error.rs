//! Error types shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid chart: {0}")]
    BadChart(String),
    #[error("invalid normal coordinates: {0}")]
    BadCoords(String),
    #[error("curve is not connected: traced {0} components")]
    NotConnected(usize),
    #[error("curve is peripheral around a puncture")]
    Peripheral,
    #[error("curve is null-homotopic")]
    NullHomotopic,
    #[error("curves live in different charts ({0} vs {1})")]
    ChartMismatch(String, String),
    #[error("multicurve members intersect: i = {0}")]
    NotDisjoint(u64),
    #[error("duplicate member in multicurve")]
    DuplicateCurve,
    #[error("not half-twistable: {0}")]
    NotHalfTwistable(String),
    #[error("half twist unsupported: {0}")]
    HalfTwistUnsupported(String),
    #[error("curves are not Farey-adjacent: i = {found}, expected {expected}")]
    NotAdjacent { found: u64, expected: u64 },
    #[error("operation needs a complexity-1 piece, complement is {0}")]
    NotComplexityOne(String),
    #[error("shortening search exceeded budget of {0} states")]
    ShortenBudget(usize),
    #[error("inconsistent strand comparison while arranging curves")]
    ArrangeInconsistent,
    #[error("{0}")]
    Other(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PantsError {
    #[error("surface {0} has complexity {1}; pants-graph operations need kappa >= 1")]
    LowComplexity(String, i64),
    #[error("multicurve is not a pants decomposition: deficiency {0}")]
    NotPants(i64),
    #[error("moving curve is not a member of the vertex")]
    NotAMember,
    #[error("vertex budget exceeded: {visited} vertices, cap {cap}")]
    BudgetExceeded { visited: usize, cap: usize },
    #[error("input is not a circuit: {0}")]
    NotACircuit(String),
    #[error("input is not an alternating 4-tuple: {0}")]
    NotASquare(String),
    #[error("input is not a length-2 path: {0}")]
    NotAPath(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("seed validation failed: {0}")]
    SeedValidation(String),
    #[error("gluing constraint violated: {0}")]
    GluingConstraint(String),
    #[error("construction needs {0}")]
    Unsupported(String),
    #[error(transparent)]
    Pants(#[from] PantsError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: usize },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error(transparent)]
    Pants(#[from] PantsError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}
