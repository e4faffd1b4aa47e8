//! User-defined schemas through the public API: both subject-selector
//! shapes behave like their built-in counterparts.

use lagado_core::{
    AdmissibilityMode, Model, Referent, SchemaId, SchemaRegistry, SchemaTemplate, SubjectSelector,
    Term, characterize_exceptions, evaluate_instance, find_conflicts, mk_csi, render_instance,
    verdict_table,
};

fn atom(name: &str) -> Term {
    Term::atomic(name).unwrap()
}

fn registry_with_custom() -> SchemaRegistry {
    let mut registry = SchemaRegistry::builtin();
    registry
        .register(SchemaTemplate::new(
            SchemaId::new("blefuscudian"),
            "Blefuscudian",
            "B",
            SubjectSelector::ConstTerm(atom("b").quoted()),
        ))
        .unwrap();
    registry
        .register(SchemaTemplate::new(
            SchemaId::new("glubbdubdribian"),
            "Glubbdubdribian",
            "G",
            SubjectSelector::XSlot,
        ))
        .unwrap();
    registry
}

#[test]
fn fixed_subject_custom_schema_designates_its_quoted_name() {
    let registry = registry_with_custom();
    let schema = SchemaId::new("blefuscudian");
    assert_eq!(registry.get(&schema).unwrap().designated_name(), Some("b"));

    let model = Model::build_with_schemas(
        [
            ("a".to_string(), Referent::Opaque("v".into())),
            ("b".to_string(), Referent::Opaque("w".into())),
        ],
        registry,
    )
    .unwrap();

    // Only the designated name's coordinated instance is true.
    let csi_b = mk_csi(model.schemas(), &schema, atom("b")).unwrap();
    assert!(evaluate_instance(&model, &csi_b).unwrap().0.value);
    let csi_a = mk_csi(model.schemas(), &schema, atom("a")).unwrap();
    assert!(!evaluate_instance(&model, &csi_a).unwrap().0.value);

    assert_eq!(
        characterize_exceptions(&model, &schema, &["a", "b"], 2).unwrap(),
        vec![atom("b")]
    );

    let rendered = render_instance(model.schemas(), &csi_b).unwrap();
    assert_eq!(
        rendered,
        "b is Blefuscudian iff: 'b' is the first term in S, if S is the \
         coordinated substitution instance of (B) in which 'b' is the first \
         term."
    );
}

#[test]
fn x_slot_custom_schema_tracks_self_reference() {
    let registry = registry_with_custom();
    let schema = SchemaId::new("glubbdubdribian");
    let model = Model::build_with_schemas(
        [
            ("d".to_string(), Referent::TermRef(atom("d"))),
            ("a".to_string(), Referent::Opaque("v".into())),
        ],
        registry,
    )
    .unwrap();

    assert_eq!(
        characterize_exceptions(&model, &schema, &["a", "d"], 2).unwrap(),
        vec![atom("d")]
    );

    // The same clash shape as the built-in x-subject schema.
    let table = verdict_table(&model, &schema, AdmissibilityMode::CsiOnly, &["a", "d"], 2).unwrap();
    let conflicts = find_conflicts(&table, &model, false);
    assert_eq!(conflicts.len(), 1);
    assert_eq!(
        conflicts[0].positive.source_instance.spec_string(),
        "CSI(d)"
    );
    assert_eq!(
        conflicts[0].negative.source_instance.spec_string(),
        "CSI('d')"
    );
}
