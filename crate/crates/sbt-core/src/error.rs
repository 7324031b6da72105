use alloc::string::String;
use core::fmt;
use num_complex::Complex64;

/// Error type shared by every module in the crate.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Malformed input text; names the offending token.
    Parse(String),
    /// A parameter violates its documented inequality.
    Constraint(String),
    /// An argument is outside the supported range.
    Range(String),
    /// Dimension / shape mismatch between a rule and an integrand.
    Shape(String),
    /// The decay guard rejected an integral that would not converge.
    Divergence(String),
    /// An iterative scheme stopped without meeting its tolerance; carries the
    /// last two estimates so the caller can judge how far apart they are.
    Accuracy {
        context: String,
        last: Complex64,
        previous: Complex64,
    },
    /// Not enough data points for the requested fit or classification.
    InsufficientData(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Constraint(m) => write!(f, "constraint violated: {m}"),
            Error::Range(m) => write!(f, "out of range: {m}"),
            Error::Shape(m) => write!(f, "shape mismatch: {m}"),
            Error::Divergence(m) => write!(f, "divergent integral: {m}"),
            Error::Accuracy {
                context,
                last,
                previous,
            } => write!(
                f,
                "accuracy not reached in {context}: last estimate {last}, previous {previous}"
            ),
            Error::InsufficientData(m) => write!(f, "insufficient data: {m}"),
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for Error {}
