//! Shared fixtures for the benchmarks.

use lagado_core::{Model, Referent, Term};

/// Four names exercising every stipulation shape: a self-referring name, two
/// names sharing an opaque object, and a name for another name's expression.
pub fn mixed_model() -> Model {
    Model::build([
        ("a".to_string(), Referent::Opaque("venus".into())),
        ("b".to_string(), Referent::Opaque("venus".into())),
        (
            "c".to_string(),
            Referent::TermRef(Term::atomic("a").unwrap()),
        ),
        (
            "d".to_string(),
            Referent::TermRef(Term::atomic("d").unwrap()),
        ),
    ])
    .unwrap()
}

pub const MIXED_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// A deeply quoted term for parse/render benchmarks.
pub fn deep_term(depth: usize) -> Term {
    let mut term = Term::atomic("d").unwrap();
    for _ in 0..depth {
        term = term.quoted();
    }
    term
}
