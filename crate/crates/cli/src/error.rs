use std::fmt;

/// Position in an input text, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: Pos, msg: String },
    #[error(transparent)]
    Engine(#[from] cobcalc::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Self::Parse { pos: Pos { line, col }, msg: msg.into() }
    }

    /// Process exit status: 2 for unreadable or malformed input, 1 for engine errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Parse { .. } | Self::Usage(_) | Self::Io { .. } => 2,
            Self::Engine(_) => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
