use thiserror::Error;

/// Which end of a value range an error or report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeEnd {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a distance function or formula.
    #[error("domain error: {value} violates {bound}")]
    Domain { value: f64, bound: String },

    /// A value or distance lies outside the configured range of a scale.
    #[error("range error: {value} outside [{lo}, {hi}]")]
    Range { value: f64, lo: f64, hi: f64 },

    #[error("incompatible scales: {0}")]
    IncompatibleScales(String),

    #[error("invalid exponent: alpha must be finite and nonzero, got {0}")]
    InvalidExponent(f64),

    #[error("invalid scale: {0}")]
    InvalidSpec(String),

    #[error("tick set has {0} ticks, at least 2 are required")]
    TooFewTicks(usize),

    /// A request document could not be read.
    #[error("bad request: {0}")]
    BadRequest(String),
}

impl Error {
    pub(crate) fn domain(value: f64, bound: impl Into<String>) -> Self {
        Error::Domain {
            value,
            bound: bound.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidSpec(msg.into())
    }

    /// Problems with the input itself, as opposed to analysis failures on
    /// well-formed input.
    pub fn is_input_error(&self) -> bool {
        self.code() == "bad_request"
    }

    /// Stable machine-readable code shared by the CLI and HTTP service.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain { .. } | Error::InvalidExponent(_) => "domain_error",
            Error::Range { .. } => "range_error",
            Error::IncompatibleScales(_) => "incompatible_scales",
            Error::InvalidSpec(_) | Error::TooFewTicks(_) | Error::BadRequest(_) => "bad_request",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
