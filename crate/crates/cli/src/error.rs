use serde::Serialize;
use twistcoh::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Singular(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Internal(String),
}

#[derive(Serialize)]
struct Record<'a> {
    kind: &'a str,
    exit_code: i32,
    message: String,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Validation(_) => "validation",
            CliError::Unsupported(_) => "unsupported",
            CliError::Singular(_) => "singular",
            CliError::Io(_) => "io",
            CliError::Internal(_) => "internal",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Unsupported(_) => 4,
            CliError::Singular(_) => 5,
            CliError::Io(_) => 6,
            CliError::Internal(_) => 1,
        }
    }

    /// One line of JSON for stderr.
    pub fn record(&self) -> String {
        let r = Record { kind: self.kind(), exit_code: self.exit_code(), message: self.to_string() };
        serde_json::json!({ "error": r }).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. } | Error::MissingField(_) | Error::Scalar(_) | Error::UnknownFixture(_) => CliError::Parse(msg),
            Error::Model(_) | Error::Dimension(_) | Error::Precondition(_) => CliError::Validation(msg),
            Error::Unsupported(_) => CliError::Unsupported(msg),
            Error::Singular { .. } => CliError::Singular(msg),
            Error::Convention(_) => CliError::Internal(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
