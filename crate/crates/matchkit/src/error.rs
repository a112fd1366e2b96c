use thiserror::Error;

/// Error type shared across the crate.
///
/// The variants mirror the failure classes of the public operations:
/// malformed values, bad arguments, scale guards, algebraic domain
/// violations, and unmet construction preconditions.
#[derive(Debug, Error)]
pub enum Error {
    /// A value is internally inconsistent with its spec (wrong arity,
    /// unreduced residues, dependent basis rows, ...).
    #[error("structural error: {0}")]
    Structure(String),

    /// An argument is outside an operation's contract.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The request exceeds a pinned enumeration bound.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An algebraically impossible request (inverse of zero, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A construction's hypothesis does not hold for the given input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// `H ∩ B` is trivial, so no local matching target exists.
    #[error("precondition failed: NoIntersection (H meets B trivially)")]
    NoIntersection,

    /// No element `a` of `A` satisfies `aH ⊆ A`.
    #[error("precondition failed: NoCarrier (no a in A with aH contained in A)")]
    NoCarrier,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
