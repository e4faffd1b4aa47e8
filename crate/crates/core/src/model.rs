//! Naming stipulations and the denotation function.
//!
//! A model fixes what every atomic name denotes: either a term of the object
//! language or an opaque non-linguistic object. Quotation denotes
//! unconditionally — `'t'` denotes the expression `t` in every model — so
//! only atomic names need stipulations, and reference must be total: an
//! unstipulated name is a hard error, never an unknown value.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::schema::{SchemaId, SchemaRegistry, SchemaTemplate};
use crate::term::{Term, validate_identifier};

/// What a name denotes: an expression of the object language, or an opaque
/// object outside it. The two namespaces are disjoint; an opaque referent is
/// never equal to any term referent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Referent {
    /// A linguistic expression.
    TermRef(Term),
    /// A non-linguistic object, e.g. a planet, identified by an id.
    Opaque(String),
}

impl Referent {
    /// The expression this referent is, if it is one.
    pub fn as_term(&self) -> Option<&Term> {
        match self {
            Referent::TermRef(t) => Some(t),
            Referent::Opaque(_) => None,
        }
    }
}

impl fmt::Display for Referent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Referent::TermRef(t) => write!(f, "expression {t}"),
            Referent::Opaque(id) => write!(f, "object {id}"),
        }
    }
}

impl Serialize for Referent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Referent", 2)?;
        match self {
            Referent::TermRef(t) => {
                s.serialize_field("kind", "expression")?;
                s.serialize_field("value", t)?;
            }
            Referent::Opaque(id) => {
                s.serialize_field("kind", "object")?;
                s.serialize_field("value", id)?;
            }
        }
        s.end()
    }
}

/// An identity between two terms together with how it is grounded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityFact {
    pub left: Term,
    pub right: Term,
    pub justification: Justification,
}

/// How an identity fact is grounded in the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    /// Disquotation on a term-valued stipulation: from "`n` names `u`",
    /// infer the identity between `n` and `u`'s names.
    Disquotation,
    /// Two names stipulated to one referent.
    Stipulated,
}

impl fmt::Display for IdentityFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let how = match self.justification {
            Justification::Disquotation => "disquotation",
            Justification::Stipulated => "stipulation",
        };
        write!(f, "{} = {} [{}]", self.left, self.right, how)
    }
}

/// A finite, immutable naming model: stipulations for atomic names plus the
/// registered schemas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    stipulations: BTreeMap<String, Referent>,
    schemas: SchemaRegistry,
}

impl Model {
    /// Build a model from `(name, referent)` stipulations with the built-in
    /// schemas registered. Every name names exactly one thing; duplicates
    /// are rejected.
    pub fn build(stipulations: impl IntoIterator<Item = (String, Referent)>) -> Result<Model> {
        Model::build_with_schemas(stipulations, SchemaRegistry::builtin())
    }

    /// As [`Model::build`], with a caller-supplied schema registry.
    pub fn build_with_schemas(
        stipulations: impl IntoIterator<Item = (String, Referent)>,
        schemas: SchemaRegistry,
    ) -> Result<Model> {
        let mut map = BTreeMap::new();
        for (name, referent) in stipulations {
            validate_identifier(&name)?;
            match &referent {
                Referent::Opaque(id) => validate_identifier(id)?,
                Referent::TermRef(t) => validate_identifier(t.base_name())?,
            }
            if map.insert(name.clone(), referent).is_some() {
                return Err(Error::DuplicateStipulation(name));
            }
        }
        Ok(Model {
            stipulations: map,
            schemas,
        })
    }

    /// The denotation function. Quotation is transparent to it — `'t'`
    /// denotes the expression `t` in every model — while atomic names go
    /// through their stipulations. Identity facts never reach inside a
    /// quotation: the context is opaque for substitution even though its
    /// denotation rule is fixed.
    pub fn denote(&self, term: &Term) -> Result<Referent> {
        match term {
            Term::Quote(inner) => Ok(Referent::TermRef((**inner).clone())),
            Term::Atomic(name) => self
                .stipulations
                .get(name)
                .cloned()
                .ok_or_else(|| Error::UnstipulatedName(name.clone())),
        }
    }

    /// True iff the name denotes its own expression.
    pub fn is_self_referring(&self, name: &str) -> Result<bool> {
        let referent = self.denote(&Term::Atomic(name.to_string()))?;
        Ok(referent == Referent::TermRef(Term::Atomic(name.to_string())))
    }

    /// Truth condition of the object-language identity `t1 = t2`: the two
    /// terms denote one thing.
    pub fn coreferent(&self, t1: &Term, t2: &Term) -> Result<bool> {
        Ok(self.denote(t1)? == self.denote(t2)?)
    }

    /// Identities obtained by disquotation. A term-valued stipulation says
    /// the name `n` names the expression `u`; stripping the quotes off the
    /// naming statement's subject yields the identity between `n` and the
    /// quote-name `'u'` — both denote `u`, so the fact is sound in every
    /// model. Opaque stipulations yield no term-term identity:
    /// co-stipulated names co-refer, but that is [`Model::coreferent`]'s
    /// business, not a disquotation step.
    pub fn dq_identities(&self) -> Vec<IdentityFact> {
        self.stipulations
            .iter()
            .filter_map(|(name, referent)| match referent {
                Referent::TermRef(u) => Some(IdentityFact {
                    left: Term::Atomic(name.clone()),
                    right: u.quoted(),
                    justification: Justification::Disquotation,
                }),
                Referent::Opaque(_) => None,
            })
            .collect()
    }

    /// Cycles in the naming graph with an edge `n -> m` whenever `n` is
    /// stipulated to the expression `m`. A self-referring name is a length-1
    /// cycle. Each cycle is rotated to start at its least name; cycles are
    /// sorted by that name.
    pub fn detect_cycles(&self) -> Vec<Vec<String>> {
        let successor = |name: &str| -> Option<String> {
            match self.stipulations.get(name) {
                Some(Referent::TermRef(Term::Atomic(next))) => Some(next.clone()),
                _ => None,
            }
        };

        let mut cycles = Vec::new();
        let mut absorbed: std::collections::BTreeSet<String> = Default::default();
        for start in self.stipulations.keys() {
            if absorbed.contains(start) {
                continue;
            }
            // Walk the (at most unary) successor chain, watching for a
            // return to a node on the current path.
            let mut path: Vec<String> = vec![start.clone()];
            let mut seen: BTreeMap<String, usize> = BTreeMap::new();
            seen.insert(start.clone(), 0);
            let mut current = start.clone();
            while let Some(next) = successor(&current) {
                if !self.stipulations.contains_key(&next) {
                    break;
                }
                if let Some(&at) = seen.get(&next) {
                    let mut cycle: Vec<String> = path[at..].to_vec();
                    for name in &cycle {
                        absorbed.insert(name.clone());
                    }
                    let min_pos = cycle
                        .iter()
                        .enumerate()
                        .min_by(|a, b| a.1.cmp(b.1))
                        .map(|(i, _)| i)
                        .unwrap_or(0);
                    cycle.rotate_left(min_pos);
                    if !cycles.contains(&cycle) {
                        cycles.push(cycle);
                    }
                    break;
                }
                if absorbed.contains(&next) {
                    break;
                }
                seen.insert(next.clone(), path.len());
                path.push(next.clone());
                current = next;
            }
            for name in path {
                absorbed.insert(name);
            }
        }
        cycles.sort();
        cycles
    }

    /// Stipulated names in sorted order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.stipulations.keys().map(String::as_str)
    }

    pub fn stipulations(&self) -> impl Iterator<Item = (&str, &Referent)> {
        self.stipulations.iter().map(|(n, r)| (n.as_str(), r))
    }

    pub fn schema(&self, id: &SchemaId) -> Result<&SchemaTemplate> {
        self.schemas.get(id)
    }

    pub fn schemas(&self) -> &SchemaRegistry {
        &self.schemas
    }
}
