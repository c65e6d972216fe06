use thiserror::Error;

/// Errors raised by the numerical and combinatorial routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The constant term of a jet divisor vanishes at working precision.
    #[error("jet division by a series whose constant term vanishes")]
    SingularJetDivision,

    /// Exact polynomial division left a non-negligible remainder.
    #[error("inexact polynomial division: max remainder coefficient {max_remainder:e}")]
    InexactDivision { max_remainder: f64 },

    #[error("lattice size {n} exceeds the enumeration cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("position {position} is outside 1..={n}")]
    PositionOutOfRange { position: usize, n: usize },

    #[error("lattice size must be at least 1")]
    EmptyLattice,

    /// Parameters sit on a manifold where a weight or denominator vanishes.
    #[error("singular parameters: {0}")]
    SingularParameters(String),

    /// Inhomogeneous spectral parameters coalesce or a weight underflows.
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("lattice size {0} is not supported by this formula")]
    UnsupportedSize(usize),

    #[error("Hankel determinant of order {0} vanishes")]
    SingularHankel(usize),

    #[error("parameters outside the disordered regime: {0}")]
    OutsideRegime(String),

    #[error("cannot parse angle `{0}`")]
    InvalidAngle(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
