use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid model: {0}")]
    Model(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("missing field {0}")]
    MissingField(&'static str),

    #[error("invalid scalar literal {0:?}")]
    Scalar(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resolvent is singular in degree {degree}{}", fmt_witness(.witness))]
    Singular { degree: usize, witness: Option<Vec<u32>> },

    #[error("convention check failed: {0}")]
    Convention(String),
}

fn fmt_witness(w: &Option<Vec<u32>>) -> String {
    match w {
        Some(idx) => format!(" at multi-index {idx:?}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
