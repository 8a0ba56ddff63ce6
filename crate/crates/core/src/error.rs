use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("point lies outside the domain of the projective predicate: {0}")]
    OutsideDomain(String),

    #[error("map is not invariant under the action: {0}")]
    NotInvariant(String),

    #[error("malformed section: {0}")]
    MalformedSection(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("finite-field guard violated: {0}")]
    Guard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
