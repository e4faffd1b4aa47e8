//! A quotational object language with naming stipulations, definition
//! schemas, and contradiction analysis.
//!
//! The object language has atomic names and quote-names and nothing else; it
//! contains no semantic vocabulary, no connectives, and in particular no
//! negation operator. A [`Model`] stipulates what each name denotes.
//! Definition schemas such as the built-in `lagadonian` and `laputan`
//! templates lay down conditions through their substitution instances;
//! [`evaluate_instance`] works those conditions out with a step-by-step
//! derivation, and the analysis layer enumerates instances over a bounded
//! term universe to find verdict clashes or certify their absence.

pub mod analysis;
pub mod error;
pub mod eval;
pub mod model;
pub mod policy;
pub mod schema;
pub mod term;

pub use analysis::{
    AdmissibilityMode, Certificate, ConflictKind, ConflictProvenance, ConflictReport,
    ConsistencyOutcome, TableRow, VerdictTable, characterize_exceptions, consistency_certificate,
    find_conflicts, verdict_table,
};
pub use error::{Error, Result};
pub use eval::{
    AttributedVerdict, DeicticOutcome, DeicticSubject, EvaluatedInstance, Trace, TraceStep,
    Verdict, VerdictRoute, attributed_verdict, classify_identity, evaluate_deictic,
    evaluate_instance, evaluate_rendered, leibniz_transfer, resolve_description,
};
pub use model::{IdentityFact, Justification, Model, Referent};
pub use policy::{Policy, PolicyReport, PolicyViolation, check_policy};
pub use schema::{
    DeicticInstance, Instance, SchemaId, SchemaRegistry, SchemaTemplate, SubjectSelector, mk_csi,
    mk_instance, render_instance,
};
pub use term::{Term, term_universe, validate_identifier};

// Models and all evaluation inputs are immutable; every operation is a pure
// function of its arguments and safe to run concurrently.
const _: () = {
    const fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Model>();
    assert_send_sync::<Term>();
    assert_send_sync::<VerdictTable>();
};
