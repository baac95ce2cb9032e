use crate::exactlin::FieldSpec;
use crate::localise::Rejection;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    InvalidPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("invalid field element: {0}")]
    InvalidScalar(String),

    #[error("representations live on different quivers")]
    QuiverMismatch,

    #[error("quiver has a directed cycle through vertex {0}")]
    CyclicQuiver(usize),

    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),

    #[error("arrow {arrow}: expected a {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    ArrowShape {
        arrow: usize,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("vertex {vertex}: expected a {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    VertexShape {
        vertex: usize,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("not a morphism: the square of arrow {arrow} ({source_vertex} -> {target_vertex}) does not commute")]
    NotCommuting {
        arrow: usize,
        source_vertex: usize,
        target_vertex: usize,
    },

    #[error("{op} requires a prime field")]
    UnsupportedField { op: &'static str },

    #[error("{op}: enumeration budget of {budget} exceeded")]
    BudgetExceeded { op: &'static str, budget: usize },

    #[error("not a short exact sequence: {0}")]
    NotExact(String),

    #[error("{0} is not a direct sum of indecomposable projectives")]
    NotProjective(&'static str),

    #[error("module is not a factor of a module in the well-placed category")]
    NotInFac,

    #[error("generator set rejected: {0}")]
    NotWellPlaced(Rejection),

    #[error("localisation of {what} did not stabilise within {steps} steps (infinite-dimensional localisation?)")]
    NonStabilizing { what: String, steps: usize },

    #[error("independent computations disagree: {0}")]
    CrossCheck(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
