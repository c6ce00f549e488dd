use std::path::PathBuf;

use thiserror::Error;

use crate::exact::Rational;
use crate::sspace::SParams;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational {text:?}: {reason}")]
    ParseRational { text: String, reason: &'static str },

    #[error("degenerate identity: all quadratic coefficients are zero")]
    DegenerateIdentity,

    #[error("undefined parameter: {0} is zero")]
    UndefinedParameter(&'static str),

    #[error("not a rational Pythagorean pair: 1 + ({u})^2 != ({v})^2")]
    NotPythagorean { u: Rational, v: Rational },

    #[error("governing equation violated by {0}")]
    GoverningViolated(SParams),

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    /// A generator produced a set with some entry in {0, 1, -1}.
    #[error("degenerate output from {family} at ({params}): {sparams}")]
    Degenerate {
        family: &'static str,
        params: String,
        sparams: SParams,
    },

    #[error("geometrically invalid piped: {0}")]
    GeometricallyInvalid(String),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },

    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// The set carried by a degenerate-output error.
    pub fn degenerate_sparams(&self) -> Option<&SParams> {
        match self {
            Error::Degenerate { sparams, .. } => Some(sparams),
            _ => None,
        }
    }
}
