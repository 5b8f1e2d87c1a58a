use ergogap::Error;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    /// Sorts a library error by whether the input is malformed, invalid, or
    /// the numerics failed.
    pub fn from_core(field: &str, e: Error) -> Self {
        let msg = format!("{field}: {e}");
        match e {
            Error::DimensionMismatch { .. }
            | Error::NotSquare { .. }
            | Error::BadDims(_)
            | Error::BadIndex { .. }
            | Error::NotQubit(_) => CliError::Parse(msg),
            Error::NoConvergence { .. } | Error::Inconclusive(_) => CliError::Numerical(msg),
            Error::NotHermitian(_)
            | Error::NonFinite
            | Error::InvalidState(_)
            | Error::BadProbability(_)
            | Error::BadBloch(_)
            | Error::BadBeta(_) => CliError::Validation(msg),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Validation(_) => "validation",
            CliError::Numerical(_) => "numerical",
        }
    }

    /// `{"error": {"kind": ..., "code": ..., "message": ...}}`
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            kind: &'a str,
            code: i32,
            message: String,
        }
        #[derive(Serialize)]
        struct Wrapper<'a> {
            error: Body<'a>,
        }
        serde_json::to_string(&Wrapper {
            error: Body {
                kind: self.kind(),
                code: self.exit_code(),
                message: self.to_string(),
            },
        })
        .expect("error object serializes")
    }
}
