use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed inputs: mismatched lengths, bad names, empty groups, invalid
    /// design constants.
    #[error("structural error: {0}")]
    Structural(String),

    /// The chain is sitting at a zero-density state; accept/reject is undefined.
    #[error("invalid chain state: {0}")]
    InvalidState(String),

    /// The acceptance record cannot identify the regression (complete
    /// separation, all-zero/all-one counts, or a singular information matrix).
    #[error("degenerate design: {0}")]
    DegenerateDesign(String),

    /// A fit with slope >= 0 cannot be inverted for a step recommendation.
    #[error("invalid fit: {0}")]
    InvalidFit(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
