//! Restriction policies on naming models.
//!
//! Each policy is a decidable predicate on models, expressing one way a
//! language designer might restrict self-reference to keep the definition
//! schemas consistent.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::model::{Model, Referent};
use crate::term::Term;

/// A restriction on naming models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Policy {
    /// No name may denote its own expression.
    NoSelfReference,
    /// The naming graph must be acyclic (self-loops included).
    NoNamingCycles,
    /// No two distinct names may share a referent.
    InjectiveNaming,
    /// No name may denote any expression at all.
    NoTermValuedNames,
    /// All of the listed policies at once.
    AllOf(Vec<Policy>),
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::NoSelfReference => f.write_str("no-self-reference"),
            Policy::NoNamingCycles => f.write_str("no-naming-cycles"),
            Policy::InjectiveNaming => f.write_str("injective-naming"),
            Policy::NoTermValuedNames => f.write_str("no-term-valued-names"),
            Policy::AllOf(parts) => {
                let names: Vec<String> = parts.iter().map(Policy::to_string).collect();
                write!(f, "all-of({})", names.join(", "))
            }
        }
    }
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Policy, String> {
        match s {
            "no-self-reference" => Ok(Policy::NoSelfReference),
            "no-naming-cycles" => Ok(Policy::NoNamingCycles),
            "injective-naming" => Ok(Policy::InjectiveNaming),
            "no-term-valued-names" => Ok(Policy::NoTermValuedNames),
            other => Err(format!("unknown policy `{other}`")),
        }
    }
}

/// A concrete way a model violates a policy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PolicyViolation {
    SelfReferringName {
        name: String,
    },
    NamingCycle {
        names: Vec<String>,
    },
    SharedReferent {
        referent: Referent,
        names: Vec<String>,
    },
    TermValuedName {
        name: String,
        target: Term,
    },
}

/// Outcome of checking one policy against a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolicyReport {
    pub policy: String,
    pub passed: bool,
    pub violations: Vec<PolicyViolation>,
}

/// Check a policy against a model, listing every violation.
pub fn check_policy(model: &Model, policy: &Policy) -> PolicyReport {
    let violations = violations_of(model, policy);
    PolicyReport {
        policy: policy.to_string(),
        passed: violations.is_empty(),
        violations,
    }
}

fn violations_of(model: &Model, policy: &Policy) -> Vec<PolicyViolation> {
    match policy {
        Policy::NoSelfReference => model
            .names()
            .filter(|n| model.is_self_referring(n).unwrap_or(false))
            .map(|n| PolicyViolation::SelfReferringName { name: n.into() })
            .collect(),
        Policy::NoNamingCycles => model
            .detect_cycles()
            .into_iter()
            .map(|names| PolicyViolation::NamingCycle { names })
            .collect(),
        Policy::InjectiveNaming => {
            let mut by_referent: BTreeMap<Referent, Vec<String>> = BTreeMap::new();
            for (name, referent) in model.stipulations() {
                by_referent
                    .entry(referent.clone())
                    .or_default()
                    .push(name.into());
            }
            by_referent
                .into_iter()
                .filter(|(_, names)| names.len() > 1)
                .map(|(referent, names)| PolicyViolation::SharedReferent { referent, names })
                .collect()
        }
        Policy::NoTermValuedNames => model
            .stipulations()
            .filter_map(|(name, referent)| match referent {
                Referent::TermRef(target) => Some(PolicyViolation::TermValuedName {
                    name: name.into(),
                    target: target.clone(),
                }),
                Referent::Opaque(_) => None,
            })
            .collect(),
        Policy::AllOf(parts) => parts.iter().flat_map(|p| violations_of(model, p)).collect(),
    }
}
