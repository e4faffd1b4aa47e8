//! Error type shared by every core module.

use crate::term::Term;
use thiserror::Error;

/// Core evaluation/analysis error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `unquote` was asked to strip a quotation from an atomic term.
    #[error("term `{0}` is not a quotation")]
    NotAQuotation(Term),

    /// Concrete-syntax parse failure (unbalanced apostrophes, empty input,
    /// illegal identifier characters).
    #[error("syntax error: {0}")]
    Syntax(String),

    /// An identifier violates `[A-Za-z][A-Za-z0-9_]*`.
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),

    /// A schema id that is not present in the registry.
    #[error("unknown schema `{0}`")]
    UnknownSchema(String),

    /// The same atomic name was stipulated twice.
    #[error("duplicate stipulation for name `{0}`")]
    DuplicateStipulation(String),

    /// An atomic name was used without a stipulation; reference must be total.
    #[error("name `{0}` has no stipulation")]
    UnstipulatedName(String),

    /// A Leibniz transfer between terms with different denotations.
    #[error("terms `{left}` and `{right}` do not co-refer")]
    NotCoreferent { left: Term, right: Term },
}

pub type Result<T> = std::result::Result<T, Error>;
