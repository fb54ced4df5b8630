use graftdm::GraftError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{element}: {message}")]
    Semantic { element: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graft(#[from] GraftError),
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const CAP: i32 = 3;
}

impl CliError {
    pub fn semantic(element: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Semantic {
            element: element.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Graft(GraftError::CapExceeded { .. }) => exit::CAP,
            // these only arise when a theorem-backed invariant breaks
            CliError::Graft(
                GraftError::AntisymmetryViolation(..)
                | GraftError::InconsistentLabeling { .. }
                | GraftError::UnlabeledUpperBound(_),
            ) => exit::CHECK_FAILED,
            _ => exit::INPUT,
        }
    }
}
