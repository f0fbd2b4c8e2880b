use std::fmt;

use thiserror::Error;

/// Which matroid axiom a flat collection failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    /// An element outside `1..=ground_size` appeared in a flat.
    ElementRange,
    /// The empty set is not listed as a flat (the matroid would have loops).
    EmptyFlat,
    /// The full ground set is not a flat.
    GroundFlat,
    /// Two flats whose intersection is not a flat.
    Intersection,
    /// Some flat and element outside it do not have exactly one covering flat
    /// containing the element.
    UniqueCover,
    /// Maximal chains of flats have different lengths.
    Graded,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::ElementRange => "element-range",
            Axiom::EmptyFlat => "empty-flat",
            Axiom::GroundFlat => "ground-flat",
            Axiom::Intersection => "intersection-closure",
            Axiom::UniqueCover => "unique-cover",
            Axiom::Graded => "graded",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("axiom violation ({axiom}): {detail}")]
    AxiomViolation { axiom: Axiom, detail: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("element {0} is a coloop")]
    ColoopInput(usize),

    #[error("cone {0:?} is not in the fan")]
    MissingCone(Vec<usize>),

    #[error("fan is not pure-dimensional")]
    NotPure,

    #[error("internal mismatch: {0}")]
    InternalMismatch(String),

    #[error("verification failure: {0}")]
    VerificationFailure(String),

    #[error("precondition failure: {0}")]
    PreconditionFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
