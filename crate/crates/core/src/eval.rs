//! Evaluation of schema instances against a naming model.
//!
//! The embedded definite description "the coordinated substitution instance
//! of (Σ) in which y is the first term" is resolved referentially: what the
//! y-slot term *denotes* picks the instance, not the y-slot term's own shape.
//! If y denotes the expression `e`, the description denotes the unique
//! coordinated instance whose first term is `e`; if y denotes an opaque
//! object, no sentence has it as a first term and the description is empty.
//!
//! The embedded conditional is read universally over resolvents, so an empty
//! description makes the instance vacuously true. With a resolvent in hand,
//! the consequent "σ is the first term in S" holds exactly when the object σ
//! denotes is type-identical to the expression standing first in S.
//!
//! No negation operator exists anywhere in the object language or the schema
//! shape; contradictions surface as verdict clashes downstream, never as a
//! negated sentence.

use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{IdentityFact, Justification, Model, Referent};
use crate::schema::{DeicticInstance, Instance, SchemaId, SchemaTemplate, mk_csi, render_instance};
use crate::term::Term;

/// The truth value an instance assigns, with its vacuity flag.
///
/// `vacuous` implies `value`: vacuity is a way of being true.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub value: bool,
    pub vacuous: bool,
}

impl Verdict {
    pub fn of(value: bool) -> Verdict {
        Verdict {
            value,
            vacuous: false,
        }
    }

    pub fn vacuously_true() -> Verdict {
        Verdict {
            value: true,
            vacuous: true,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.value, self.vacuous) {
            (true, true) => f.write_str("true (vacuously)"),
            (true, false) => f.write_str("true"),
            (false, _) => f.write_str("false"),
        }
    }
}

/// One step in a derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum TraceStep {
    /// What the y-slot term denotes.
    YSlotDenotation { term: Term, referent: Referent },
    /// The embedded description picked out this instance.
    DescriptionResolved { resolvent: Instance },
    /// The embedded description has no resolvent.
    DescriptionEmpty,
    /// The embedded conditional held with no resolvent to check.
    VacuityApplied,
    /// The consequent subject and what it denotes.
    ConsequentSubject { term: Term, referent: Referent },
    /// The claimed first term (what the subject denotes) against the
    /// expression actually standing first in the resolvent.
    FirstTermComparison {
        expected: Referent,
        actual: Term,
        matched: bool,
    },
    /// A disquotational identity was invoked.
    DqApplied { identity: IdentityFact },
    /// A verdict was carried between co-denoting subject terms.
    LeibnizApplied { from: Term, to: Term },
}

/// An ordered derivation; replaying the steps against the model reproduces
/// the verdict, and equal inputs yield equal traces.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    /// Human-readable rendering: one numbered line per step, citing the rule
    /// applied.
    pub fn render(&self, model: &Model) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            let line = match step {
                TraceStep::YSlotDenotation { term, referent } => format!(
                    "y-slot {term} denotes {referent}  [{}]",
                    denotation_rule(term)
                ),
                TraceStep::DescriptionResolved { resolvent } => {
                    let rendered = render_instance(model.schemas(), resolvent)
                        .unwrap_or_else(|_| resolvent.spec_string());
                    format!(
                        "description resolves to {}: {rendered}  [unique coordinated \
                         instance with that first term]",
                        resolvent.spec_string()
                    )
                }
                TraceStep::DescriptionEmpty => {
                    "description is empty: no sentence has that object as its first term  \
                     [description resolution]"
                        .to_string()
                }
                TraceStep::VacuityApplied => {
                    "conditional holds vacuously: nothing to check  [vacuity]".to_string()
                }
                TraceStep::ConsequentSubject { term, referent } => format!(
                    "consequent subject {term} denotes {referent}  [{}]",
                    denotation_rule(term)
                ),
                TraceStep::FirstTermComparison {
                    expected,
                    actual,
                    matched,
                } => format!(
                    "claimed first term is {expected}; actual first term is \
                     expression {actual}: {}  [type identity]",
                    if *matched { "match" } else { "mismatch" }
                ),
                TraceStep::DqApplied { identity } => {
                    format!(
                        "identity {} = {}  [disquotation]",
                        identity.left, identity.right
                    )
                }
                TraceStep::LeibnizApplied { from, to } => {
                    format!("verdict carried from {from} to {to}  [indiscernibility of identicals]")
                }
            };
            let _ = writeln!(out, "{}. {line}", i + 1);
        }
        out
    }
}

fn denotation_rule(term: &Term) -> &'static str {
    match term {
        Term::Quote(_) => "quotation",
        Term::Atomic(_) => "stipulation",
    }
}

/// How a verdict came to be attributed to its subject.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "kebab-case")]
pub enum VerdictRoute {
    PlainEvaluation,
    LeibnizTransfer { identity: IdentityFact },
}

/// A verdict pinned to a subject term and the object it denotes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttributedVerdict {
    pub subject_term: Term,
    pub subject_object: Referent,
    pub verdict: Verdict,
    pub source_instance: Instance,
    pub route: VerdictRoute,
    pub trace: Trace,
}

/// Resolve the embedded description for a y-slot term: the unique coordinated
/// instance whose first term is the expression the y-slot denotes, or `None`
/// when it denotes an opaque object.
pub fn resolve_description(
    model: &Model,
    template: &SchemaTemplate,
    y_term: &Term,
) -> Result<Option<Instance>> {
    match model.denote(y_term)? {
        Referent::TermRef(expr) => Ok(Some(mk_csi(model.schemas(), &template.id, expr)?)),
        Referent::Opaque(_) => Ok(None),
    }
}

/// Evaluate an instance to a verdict with its derivation trace.
pub fn evaluate_instance(model: &Model, inst: &Instance) -> Result<(Verdict, Trace)> {
    let template = model.schema(&inst.schema)?.clone();
    // Reference must be total over the instance: the x-slot denotation is
    // needed for attribution even when the consequent subject is fixed.
    model.denote(&inst.x_term)?;

    let mut trace = Trace::default();

    let y_referent = model.denote(&inst.y_term)?;
    trace.steps.push(TraceStep::YSlotDenotation {
        term: inst.y_term.clone(),
        referent: y_referent.clone(),
    });

    let resolvent = match resolve_description(model, &template, &inst.y_term)? {
        Some(resolvent) => {
            trace.steps.push(TraceStep::DescriptionResolved {
                resolvent: resolvent.clone(),
            });
            resolvent
        }
        None => {
            trace.steps.push(TraceStep::DescriptionEmpty);
            trace.steps.push(TraceStep::VacuityApplied);
            return Ok((Verdict::vacuously_true(), trace));
        }
    };

    let subject = template.consequent_subject(&inst.x_term);
    let subject_referent = model.denote(&subject)?;
    trace.steps.push(TraceStep::ConsequentSubject {
        term: subject.clone(),
        referent: subject_referent.clone(),
    });

    let first = resolvent.first_term().clone();
    let matched = subject_referent == Referent::TermRef(first.clone());
    trace.steps.push(TraceStep::FirstTermComparison {
        expected: subject_referent,
        actual: first,
        matched,
    });

    Ok((Verdict::of(matched), trace))
}

/// Evaluate an instance and package the result as an attributed verdict for
/// the x-slot subject.
pub fn attributed_verdict(model: &Model, inst: &Instance) -> Result<AttributedVerdict> {
    let (verdict, trace) = evaluate_instance(model, inst)?;
    Ok(AttributedVerdict {
        subject_term: inst.x_term.clone(),
        subject_object: model.denote(&inst.x_term)?,
        verdict,
        source_instance: inst.clone(),
        route: VerdictRoute::PlainEvaluation,
        trace,
    })
}

/// Ground an identity between two co-denoting terms: disquotation when an
/// endpoint is an atomic name stipulated to an expression, bare stipulation
/// otherwise (two names sharing an opaque referent).
pub fn classify_identity(model: &Model, left: &Term, right: &Term) -> Result<IdentityFact> {
    let term_valued = |t: &Term| match t {
        Term::Atomic(_) => matches!(model.denote(t), Ok(Referent::TermRef(_))),
        Term::Quote(_) => false,
    };
    let justification = if term_valued(left) || term_valued(right) {
        Justification::Disquotation
    } else {
        Justification::Stipulated
    };
    Ok(IdentityFact {
        left: left.clone(),
        right: right.clone(),
        justification,
    })
}

/// Carry a verdict from its subject term to a co-denoting term. The transfer
/// moves the predicate attribution between subject terms only; it never
/// rewrites inside a quotation context.
pub fn leibniz_transfer(
    model: &Model,
    verdict: &AttributedVerdict,
    to_term: &Term,
) -> Result<AttributedVerdict> {
    if !model.coreferent(&verdict.subject_term, to_term)? {
        return Err(Error::NotCoreferent {
            left: verdict.subject_term.clone(),
            right: to_term.clone(),
        });
    }
    let identity = classify_identity(model, &verdict.subject_term, to_term)?;
    let mut trace = verdict.trace.clone();
    if identity.justification == Justification::Disquotation {
        trace.steps.push(TraceStep::DqApplied {
            identity: identity.clone(),
        });
    }
    trace.steps.push(TraceStep::LeibnizApplied {
        from: verdict.subject_term.clone(),
        to: to_term.clone(),
    });
    Ok(AttributedVerdict {
        subject_term: to_term.clone(),
        subject_object: verdict.subject_object.clone(),
        verdict: verdict.verdict,
        source_instance: verdict.source_instance.clone(),
        route: VerdictRoute::LeibnizTransfer { identity },
        trace,
    })
}

/// Subject of the self-pointing demo sentence: either a term actually
/// replacing the variable, or the open formula with a term merely assigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeicticSubject {
    Replaced(Term),
    Assigned(Term),
}

/// Outcome of the self-pointing demo.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeicticOutcome {
    True,
    False,
    /// With only an assignment there is no fact of the matter: the
    /// description's denotation is not pinned down until a term replaces
    /// the variable.
    Indeterminate,
}

impl std::fmt::Display for DeicticOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DeicticOutcome::True => f.write_str("true"),
            DeicticOutcome::False => f.write_str("false"),
            DeicticOutcome::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

impl Serialize for DeicticOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Evaluate the demo sentence `<subject> is the first term of this very
/// substitution instance of (#)`. True exactly when the subject denotes the
/// very expression standing first — the expression as written.
pub fn evaluate_deictic(model: &Model, subject: &DeicticSubject) -> Result<DeicticOutcome> {
    match subject {
        DeicticSubject::Assigned(_) => Ok(DeicticOutcome::Indeterminate),
        DeicticSubject::Replaced(term) => {
            let instance = DeicticInstance::new(term.clone());
            let denoted = model.denote(term)?;
            let holds = denoted == Referent::TermRef(instance.first_term().clone());
            Ok(if holds {
                DeicticOutcome::True
            } else {
                DeicticOutcome::False
            })
        }
    }
}

/// A schema-instance pair evaluated together with its rendering; convenience
/// used by trace displays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluatedInstance {
    pub instance: Instance,
    pub rendered: String,
    pub verdict: Verdict,
    pub trace: Trace,
}

/// Evaluate and render in one step.
pub fn evaluate_rendered(model: &Model, inst: &Instance) -> Result<EvaluatedInstance> {
    let (verdict, trace) = evaluate_instance(model, inst)?;
    Ok(EvaluatedInstance {
        instance: inst.clone(),
        rendered: render_instance(model.schemas(), inst)?,
        verdict,
        trace,
    })
}

impl Serialize for EvaluatedInstance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EvaluatedInstance", 4)?;
        s.serialize_field("instance", &self.instance)?;
        s.serialize_field("rendered", &self.rendered)?;
        s.serialize_field("verdict", &self.verdict)?;
        s.serialize_field("trace", &self.trace)?;
        s.end()
    }
}

/// The two slot terms a caller most often needs for a schema id.
pub fn builtin_schema_ids() -> [SchemaId; 2] {
    [SchemaId::lagadonian(), SchemaId::laputan()]
}
