use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not a dyadic rank in [0, 1): {0}")]
    NotDyadicRank(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown symbol `{symbol}` at position {position}")]
    UnknownSymbol { symbol: String, position: usize },

    #[error("{0}")]
    HeightUnsupported(String),

    #[error("no exact rational value for {base}^({exponent})")]
    RationalPowerUnavailable { base: String, exponent: String },

    #[error("{0}")]
    TransferUnavailable(String),

    #[error("power undefined: {0}")]
    PowerUndefined(String),

    #[error("{0}")]
    Undefined(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable variant name, used in command-line diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotDyadicRank(_) => "NotDyadicRank",
            Error::Parse { .. } => "ParseError",
            Error::Csv { .. } => "ParseError",
            Error::Domain(_) => "DomainError",
            Error::UnknownSymbol { .. } => "UnknownSymbol",
            Error::HeightUnsupported(_) => "HeightUnsupported",
            Error::RationalPowerUnavailable { .. } => "RationalPowerUnavailable",
            Error::TransferUnavailable(_) => "TransferUnavailable",
            Error::PowerUndefined(_) => "PowerUndefined",
            Error::Undefined(_) => "Undefined",
            Error::Io(_) => "IoError",
        }
    }
}
