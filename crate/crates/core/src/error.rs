use std::fmt;

use thiserror::Error;

/// Which defect word a membership test was looking at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefectKind {
    /// `h(x) x^-1` for a generator `x`.
    Generator,
    /// The image `h(a)` of a meridian, seen in the handlebody group.
    Handlebody,
}

/// First place where a mapping class leaves a filtration term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub generator: String,
    pub kind: DefectKind,
    /// Weight of the first nonvanishing slice.
    pub degree: usize,
    /// Rendering of that slice.
    pub slice: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            DefectKind::Generator => format!("{}-defect", self.generator),
            DefectKind::Handlebody => format!("handlebody image of {}", self.generator),
        };
        write!(f, "{what} is nonzero at weight {}: {}", self.degree, self.slice)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("genus {0} is not allowed here")]
    BadGenus(usize),
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("expected constant term {expected}, found {found}")]
    ConstantTerm { expected: String, found: String },
    #[error("series is not primitive in word length {0}")]
    NotPrimitive(usize),
    #[error("substitution image of {letter} is not homogeneous of weight {weight}")]
    WeightIncompatible { letter: String, weight: usize },
    #[error("not a mapping class: boundary defect {0}")]
    NotMappingClass(String),
    #[error("could not invert endomorphism: {0}")]
    NotInvertible(String),
    #[error("not in the filtration: {0}")]
    Membership(Violation),
    #[error("not Lagrangian: {0}")]
    NotLagrangian(String),
    #[error("not in the image of eta: {0}")]
    NotInImage(String),
    #[error("unsupported level {0}")]
    BadLevel(usize),
    #[error("truncation {have} is too small, need at least {need}")]
    Truncation { have: usize, need: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
