use thiserror::Error;

use crate::ring::Ring;

/// Errors raised by the algebra, operation and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("generator tables differ between operands")]
    SpaceMismatch,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("the zero element has no degree")]
    UndefinedDegree,
    #[error("coefficient {0} is not defined over this ring")]
    BadCoefficient(String),
    #[error("invalid generator table: {0}")]
    InvalidGenerators(String),
    #[error("table entry {word}: image degree {found} does not equal input degree plus {shift} (= {expected})")]
    DegreeShift {
        word: String,
        shift: i64,
        expected: i64,
        found: i64,
    },
    #[error("malformed operation: {0}")]
    MalformedOp(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("structure check failed: {0}")]
    NotHopf(String),
    #[error("verification mode {mode} is not sound for {relation} over {ring}")]
    ModeNotApplicable {
        mode: String,
        relation: String,
        ring: Ring,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
