use thiserror::Error;

use crate::dynkin::Family;

/// Everything that can go wrong while building quivers or running checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabError {
    #[error("invalid Dynkin type {family:?}_{rank}")]
    InvalidDynkin { family: Family, rank: usize },

    #[error("{0} has no diagram involution")]
    NoInvolution(String),

    #[error("{0} does not admit a flip in its admissible group")]
    UnsupportedFlip(String),

    #[error("degenerate quotient: {0}")]
    DegenerateQuotient(String),

    #[error("malformed algebra label `{0}`")]
    MalformedLabel(String),

    #[error("automorphism word (half-shift {half_units}, flip {flip}) is not a quiver automorphism of {dynkin}")]
    IllFormedWord {
        dynkin: String,
        half_units: i64,
        flip: bool,
    },

    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: i64, m: u64 },

    #[error("h* is not defined for {0}")]
    HStarUndefined(String),

    #[error("no residue in the admissible range modulo {0}")]
    EmptyResidueRange(u64),

    #[error("no K_(p,s) found for p={p}, s={s} within the search bound")]
    NoSolutionInBound { p: u64, s: u64 },

    #[error("no Calabi-Yau period found for {0} within the search bound")]
    NoQuiverPeriod(String),

    #[error("coordinates {0} are outside the chart")]
    OutOfChart(String),

    #[error("slice column {column} is outside [0, {limit})")]
    ColumnOutOfRange { column: i64, limit: i64 },

    #[error("operation is not available for family {0:?}")]
    UnsupportedFamily(Family),

    #[error("expected tree class {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },

    #[error("cannot parse coordinate `{0}`")]
    BadCoordinate(String),
}

pub type Result<T> = std::result::Result<T, StabError>;
