//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by constructions and I/O.
///
/// Law violations discovered by validators are *not* errors; they are
/// reported through [`crate::report::LawReport`]. An `Error` means an
/// operation could not produce a value at all.
#[derive(Debug, Error)]
pub enum Error {
    /// Two base values live in different realizations (finset vs finvect,
    /// or finvect over different primes).
    #[error("realization tag mismatch: {0}")]
    TagMismatch(String),

    /// A coproduct was requested with a repeated tag.
    #[error("duplicate tag in coproduct: {0}")]
    DuplicateTag(String),

    /// Morphism shapes do not line up (non-parallel pair, codomain
    /// mismatch, wrong matrix dimensions, ...).
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A table required to be total has a missing or malformed entry.
    #[error("incomplete data: {0}")]
    IncompleteData(String),

    /// An enumeration would exceed the configured size cap.
    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    /// An element was claimed to live in a hom object it does not belong to.
    #[error("bad element: {0}")]
    BadElement(String),

    /// A coaction failed the comodule laws.
    #[error("not a comodule: {0}")]
    NotAComodule(String),

    /// Operation not supported in this realization.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A morphism required to be invertible is not.
    #[error("not an isomorphism: {0}")]
    NotIso(String),

    /// Input failed validation; the report carries the first broken law.
    #[error("validation failed for {entity}: {report}")]
    LawViolation { entity: String, report: String },

    /// Structured-text parse error.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A named entity referenced by another entity is absent.
    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
