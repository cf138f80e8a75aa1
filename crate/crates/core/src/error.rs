use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("basis index {index} out of range for level {level} (must be < {})", 1u64 << level)]
    IndexOutOfRange { index: usize, level: u32 },

    #[error("level {level} exceeds the configured cap of {cap}")]
    LevelTooLarge { level: u32, cap: u32 },

    #[error("malformed rational {0:?}")]
    InvalidRational(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown suite {name:?}; available: {available}")]
    UnknownSuite { name: String, available: String },

    #[error("unknown check {0:?}")]
    UnknownCheck(String),

    #[error("certificate self-check failed: {0}")]
    CertificateMismatch(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
