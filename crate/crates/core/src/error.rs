use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain where the model is defined.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },

    #[error("missing parameter `{0}`")]
    MissingParameter(String),

    #[error("no motor in the catalog delivers {required_nm} N·m (best available: {best_nm} N·m)")]
    NoFeasibleMotor { required_nm: f64, best_nm: f64 },

    #[error("event script contains no ACTIVATE event")]
    NoActivation,

    #[error("unknown command {0:?}")]
    UnknownCommand(String),

    #[error("{path}:{line}: {detail}")]
    Script {
        path: String,
        line: usize,
        detail: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            detail: detail.into(),
        }
    }

    /// Stable machine-readable category, printed by the CLI.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Invalid { .. } => "invalid-input",
            Error::MissingParameter(_) => "missing-parameter",
            Error::NoFeasibleMotor { .. } => "no-feasible-motor",
            Error::NoActivation => "no-activation",
            Error::UnknownCommand(_) => "unknown-command",
            Error::Script { .. } => "script",
            Error::Io { .. } => "io",
            Error::Json { .. } => "config",
        }
    }

    /// Process exit status for this error; always nonzero.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain { .. } => 3,
            Error::Invalid { .. } | Error::MissingParameter(_) | Error::Json { .. } => 2,
            Error::NoFeasibleMotor { .. } => 4,
            Error::NoActivation | Error::UnknownCommand(_) | Error::Script { .. } => 5,
            Error::Io { .. } => 6,
        }
    }
}
