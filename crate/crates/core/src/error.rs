//! Error type shared by all modules of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building or checking a structure.
///
/// Mathematical *verdicts* (a failed quaternion identity on user input, an
/// inconsistent Lee-form system, ...) are not errors; they are returned as
/// data so callers can report them. Errors are reserved for inputs that make
/// the requested computation meaningless.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: usize, found: usize },

    #[error("wrong number of arguments: expected {expected}, found {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("basis index {index} out of range 1..={dimension}")]
    IndexOutOfRange { index: usize, dimension: usize },

    #[error("index tuple {0:?} is not strictly increasing")]
    NotIncreasing(Vec<usize>),

    #[error("invalid scalar literal {literal:?}: {reason}")]
    InvalidScalar { literal: String, reason: String },

    #[error("invalid form expression {input:?}: {reason}")]
    InvalidForm { input: String, reason: String },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("metric is not symmetric")]
    NotSymmetric,

    #[error("metric is not positive definite: leading {order}x{order} minor is {value}")]
    NotPositiveDefinite { order: usize, value: String },

    #[error("2-form is degenerate")]
    DegenerateForm,

    #[error("g(., J.) is not antisymmetric: the metric is not Hermitian for this endomorphism")]
    NotAntisymmetric,

    #[error("induced endomorphisms violate the quaternion relation {identity}")]
    QuaternionRelation { identity: String },

    #[error("bracket entry for the pair ({i},{j}) appears more than once")]
    DuplicateBracket { i: usize, j: usize },

    #[error("bracket entry ({i},{i}) is invalid: [e_i, e_i] vanishes identically")]
    SelfBracket { i: usize },

    #[error("unknown catalog case {0:?}")]
    UnknownCase(String),

    #[error("case {0} has no coordinate model")]
    NoCoordinateModel(String),

    #[error("point {point:?} lies outside the chart domain of {model}")]
    OutsideDomain { model: String, point: [f64; 4] },

    #[error("metric is not positive definite near {point:?}")]
    NumericNotSpd { point: [f64; 4] },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
