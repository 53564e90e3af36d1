use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An operation was called outside its domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("valuation of zero")]
    ValuationOfZero,

    #[error("not imaginary quadratic: D = {0}")]
    NotImaginaryQuadratic(String),

    #[error("point is not on the surface: {0}")]
    OffSurface(String),

    #[error("no moduli interpretation for a raw surface")]
    NoModuliInterpretation,

    /// A search ran out of budget before finding what it was looking for.
    #[error("{what} bound exceeded ({detail})")]
    BoundExceeded { what: String, detail: String },

    #[error("classification undetermined: {0}")]
    Undetermined(String),

    #[error("reducible polynomial: {0}")]
    Reducible(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn bound(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::BoundExceeded {
            what: what.into(),
            detail: detail.into(),
        }
    }

    /// Machine-readable tag used in CLI error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Precondition(_) => "precondition",
            Error::ValuationOfZero => "valuation_of_zero",
            Error::NotImaginaryQuadratic(_) => "not_imaginary_quadratic",
            Error::OffSurface(_) => "off_surface",
            Error::NoModuliInterpretation => "no_moduli_interpretation",
            Error::BoundExceeded { .. } => "bound_exceeded",
            Error::Undetermined(_) => "undetermined",
            Error::Reducible(_) => "reducible",
            Error::Unsupported(_) => "unsupported",
            Error::Parse(_) => "parse",
        }
    }
}
