use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("coset enumeration did not complete within {0} cosets")]
    Overflow(usize),
    #[error("coset table is incomplete")]
    Incomplete,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("empty input")]
    Empty,
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for errors caused by a configured resource limit.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::Overflow(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
