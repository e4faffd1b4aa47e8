//! Terms of the object language: atomic names and finite quotations.
//!
//! A term is either an atomic name or the quotation of a term. Nothing else
//! counts as a term, and expressions are individuated by type: two terms are
//! the same expression exactly when they are structurally equal. No
//! token-level identity exists anywhere in the system.
//!
//! Concrete syntax wraps a term in one pair of ASCII apostrophes per
//! quotation level (`d`, `'d'`, `''d''`, ...). Identifiers exclude the
//! apostrophe, so the syntax is unambiguous without escaping.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A syntactic expression of the object language.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// An atomic name, e.g. `d`.
    Atomic(String),
    /// The quotation of a term, e.g. `'d'`.
    Quote(Box<Term>),
}

impl Term {
    /// Build an atomic term, validating the identifier.
    pub fn atomic(name: impl Into<String>) -> Result<Term> {
        let name = name.into();
        validate_identifier(&name)?;
        Ok(Term::Atomic(name))
    }

    /// The quotation of this term. Depth always grows by one: `'t'` is never
    /// the same expression as `t`.
    pub fn quoted(&self) -> Term {
        Term::Quote(Box::new(self.clone()))
    }

    /// Strip one quotation level.
    pub fn unquoted(&self) -> Result<Term> {
        match self {
            Term::Quote(inner) => Ok((**inner).clone()),
            Term::Atomic(_) => Err(Error::NotAQuotation(self.clone())),
        }
    }

    /// Number of quotation wrappers (0 for an atomic name).
    pub fn depth(&self) -> usize {
        match self {
            Term::Atomic(_) => 0,
            Term::Quote(inner) => inner.depth() + 1,
        }
    }

    /// The atomic name at the bottom of the quotation tower.
    pub fn base_name(&self) -> &str {
        match self {
            Term::Atomic(name) => name,
            Term::Quote(inner) => inner.base_name(),
        }
    }

    /// Parse the concrete syntax: an identifier, wrapped in one apostrophe
    /// pair per quotation level.
    pub fn parse(text: &str) -> Result<Term> {
        if text.is_empty() {
            return Err(Error::Syntax("empty term".into()));
        }
        let leading = text.chars().take_while(|&c| c == '\'').count();
        let trailing = text.chars().rev().take_while(|&c| c == '\'').count();
        if leading + trailing >= text.chars().count() {
            // Nothing but apostrophes, e.g. `''` or `'`.
            return Err(Error::Syntax(format!("no identifier in term `{text}`")));
        }
        if leading != trailing {
            return Err(Error::Syntax(format!(
                "unbalanced apostrophes in term `{text}`"
            )));
        }
        let inner = &text[leading..text.len() - trailing];
        validate_identifier(inner)
            .map_err(|_| Error::Syntax(format!("illegal identifier `{inner}` in term `{text}`")))?;
        let mut term = Term::Atomic(inner.to_string());
        for _ in 0..leading {
            term = term.quoted();
        }
        Ok(term)
    }

    /// Render to concrete syntax; exact inverse of [`Term::parse`].
    pub fn render(&self) -> String {
        match self {
            Term::Atomic(name) => name.clone(),
            Term::Quote(inner) => format!("'{}'", inner.render()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

/// Check an identifier against `[A-Za-z][A-Za-z0-9_]*`.
pub fn validate_identifier(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let ok = match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidIdentifier(name.to_string()))
    }
}

/// Enumerate every term `Quote^k(name)` for each listed name and `0 <= k <=
/// max_depth`, names in the given order, shallower terms first. The full term
/// set is infinite; this is the bounded fragment the analyzer works over.
pub fn term_universe(names: &[&str], max_depth: usize) -> Result<Vec<Term>> {
    let mut terms = Vec::with_capacity(names.len() * (max_depth + 1));
    for name in names {
        let mut term = Term::atomic(*name)?;
        terms.push(term.clone());
        for _ in 0..max_depth {
            term = term.quoted();
            terms.push(term.clone());
        }
    }
    Ok(terms)
}
