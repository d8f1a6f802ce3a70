use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("discriminant mismatch: {lhs} vs {rhs}")]
    DiscriminantMismatch { lhs: String, rhs: String },

    #[error("{family} takes {expected} parameters, got {got}")]
    ParameterCountMismatch {
        family: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("band lengths do not form a tridiagonal matrix: diag {diag}, super {sup}, sub {sub}")]
    Shape { diag: usize, sup: usize, sub: usize },

    #[error("variable {0} has no value")]
    UnboundVariable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
