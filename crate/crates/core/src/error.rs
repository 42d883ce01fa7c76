use thiserror::Error;

/// Errors produced by the geometry and quadrature routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuermassError {
    /// Malformed or out-of-contract input (dimension, non-unit vector, bad order, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// A point lies on the pole axis, so its equatorial direction is undefined.
    #[error("point lies on the pole axis; equatorial direction is undefined")]
    DegenerateAxis,

    /// The radial function is not strictly positive somewhere.
    #[error("invalid body: {0}")]
    InvalidBody(String),

    /// Section offset outside the admissible open interval (-t0, t0).
    #[error("offset {t} outside admissible range (-{t0}, {t0})")]
    OffsetOutOfRange { t: f64, t0: f64 },

    /// Root bracketing or another geometric construction failed.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A finite-difference or quadrature estimate is not finite.
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    /// The Steiner-fit oracle requires a convex section.
    #[error("oracle unsupported: {0}")]
    OracleUnsupported(String),
}

impl QuermassError {
    /// True for errors caused by the caller's configuration rather than by the geometry.
    pub fn is_input_error(&self) -> bool {
        matches!(self, QuermassError::Input(_) | QuermassError::OffsetOutOfRange { .. })
    }

    /// Prefixes the message of message-carrying variants with `context`.
    pub fn with_context(self, context: &str) -> Self {
        use QuermassError::*;
        match self {
            Input(m) => Input(format!("{context}: {m}")),
            InvalidBody(m) => InvalidBody(format!("{context}: {m}")),
            Geometry(m) => Geometry(format!("{context}: {m}")),
            NumericalDegeneracy(m) => NumericalDegeneracy(format!("{context}: {m}")),
            OracleUnsupported(m) => OracleUnsupported(format!("{context}: {m}")),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, QuermassError>;
