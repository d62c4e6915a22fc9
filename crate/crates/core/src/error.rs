use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |m - m^dagger| = {deviation:e} exceeds {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("Hermitian eigensolver did not converge")]
    NonConvergence,

    #[error("matrix or vector has a non-finite entry")]
    NonFinite,

    #[error("bad subsystem specification: {0}")]
    BadSubsystemSpec(String),

    #[error("vector is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Choi matrix is not trace preserving: max |Tr_out J - 1/d_in| = {deviation:e}")]
    NotTracePreserving { deviation: f64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("rank is not low: rank = {rank} is not below the marginal rank {marginal_rank}")]
    PreconditionRankNotLow { rank: usize, marginal_rank: usize },

    #[error("bad ensemble spec: {0}")]
    BadSpec(String),
}

impl Error {
    /// True for failures of the numerics themselves rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence)
    }
}
