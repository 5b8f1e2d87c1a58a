use std::fmt;

use thiserror::Error;

/// A single failed density-matrix check together with its measured size.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Largest entry of `|M - M^†|`.
    NotHermitian(f64),
    /// Measured trace.
    TraceNotOne(f64),
    /// Smallest eigenvalue.
    NotPsd(f64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotHermitian(v) => write!(f, "NotHermitian({v})"),
            Violation::TraceNotOne(v) => write!(f, "TraceNotOne({v})"),
            Violation::NotPsd(v) => write!(f, "NotPSD({v})"),
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("bad subsystem dimensions: {0}")]
    BadDims(String),

    #[error("invalid density matrix: {}", join_violations(.0))]
    InvalidState(Vec<Violation>),

    #[error("bad subsystem index {index} for {parties} parties")]
    BadIndex { index: usize, parties: usize },

    #[error("expected a single qubit, got dims {0:?}")]
    NotQubit(Vec<usize>),

    #[error("bad probability input: {0}")]
    BadProbability(String),

    #[error("Bloch vector length {0} outside [0, 1]")]
    BadBloch(f64),

    #[error("inverse temperature must be finite and positive, got {0}")]
    BadBeta(f64),

    #[error("classification inconclusive: {0}")]
    Inconclusive(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures that come from the numerics rather than from the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::Inconclusive(_))
    }
}
