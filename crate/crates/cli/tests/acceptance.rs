//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test -p lagado-cli --test acceptance -- --nocapture` to
//! see the lines.

use std::process::Command;
use std::time::Instant;

use lagado_cli::repro::{ReproOutcome, repro_paper};
use lagado_cli::run::run_check;
use lagado_cli::scenario::Scenario;
use lagado_core::{
    AdmissibilityMode, ConflictKind, DeicticOutcome, DeicticSubject, Model, Policy, Referent,
    SchemaId, SchemaTemplate, Term, Verdict, VerdictTable, characterize_exceptions, check_policy,
    evaluate_deictic, find_conflicts, render_instance, verdict_table,
};

fn atom(name: &str) -> Term {
    Term::atomic(name).unwrap()
}

fn term_ref(name: &str) -> Referent {
    Referent::TermRef(atom(name))
}

fn opaque(id: &str) -> Referent {
    Referent::Opaque(id.into())
}

fn self_ref_model() -> Model {
    Model::build([("d".to_string(), term_ref("d"))]).unwrap()
}

fn shared_object_model() -> Model {
    Model::build([
        ("a".to_string(), opaque("v")),
        ("b".to_string(), opaque("v")),
    ])
    .unwrap()
}

/// Closed-form verdict rule, independent of the trace-based evaluator.
fn closed_form(model: &Model, schema: &SchemaId, x: &Term, y: &Term) -> Verdict {
    let y_referent = model.denote(y).unwrap();
    match y_referent {
        Referent::Opaque(_) => Verdict::vacuously_true(),
        Referent::TermRef(_) => {
            let template = model.schema(schema).unwrap();
            let subject = template.consequent_subject(x);
            Verdict::of(model.denote(&subject).unwrap() == y_referent)
        }
    }
}

/// How one name in the two-name pool may be stipulated.
#[derive(Clone, Copy, PartialEq, Eq)]
enum NameChoice {
    Absent,
    OwnExpression,
    OtherExpression,
    OpaqueObject,
}

const CHOICES: [NameChoice; 4] = [
    NameChoice::Absent,
    NameChoice::OwnExpression,
    NameChoice::OtherExpression,
    NameChoice::OpaqueObject,
];

/// The exhaustive model/depth family: two names, each absent or stipulated
/// to itself, the other name's expression, or the one opaque object; paired
/// with every universe depth up to 3. 4 x 4 x 4 = 64 cases.
fn model_family() -> Vec<(Model, Vec<String>, usize)> {
    let mut family = Vec::new();
    for a_choice in CHOICES {
        for b_choice in CHOICES {
            let mut stipulations: Vec<(String, Referent)> = Vec::new();
            for (name, other, choice) in [("a", "b", a_choice), ("b", "a", b_choice)] {
                let referent = match choice {
                    NameChoice::Absent => continue,
                    NameChoice::OwnExpression => term_ref(name),
                    NameChoice::OtherExpression => term_ref(other),
                    NameChoice::OpaqueObject => opaque("v"),
                };
                stipulations.push((name.to_string(), referent));
            }
            let names: Vec<String> = stipulations.iter().map(|(n, _)| n.clone()).collect();
            let model = Model::build(stipulations).unwrap();
            for depth in 0..=3usize {
                family.push((model.clone(), names.clone(), depth));
            }
        }
    }
    family
}

fn expect_verdict(outcome: &ReproOutcome, section: &str, label: &str, actual: &str) {
    let section = outcome
        .sections
        .iter()
        .find(|s| s.name == section)
        .unwrap_or_else(|| panic!("missing section {section}"));
    let line = section
        .lines
        .iter()
        .find(|l| l.label == label)
        .unwrap_or_else(|| panic!("missing line {label} in {}", section.name));
    assert!(line.passed, "{}: {label} failed", section.name);
    assert_eq!(line.actual, actual, "{}: {label}", section.name);
}

#[test]
fn criterion_1_repro_paper_verdicts() {
    let started = Instant::now();
    let outcome = repro_paper().unwrap();
    let elapsed = started.elapsed();

    assert!(outcome.passed(), "{}", outcome.render());

    // The eight pinned verdicts, exact.
    expect_verdict(
        &outcome,
        "lagadonian_agreement",
        "verdict CSI('a') false",
        "false",
    );
    expect_verdict(
        &outcome,
        "lagadonian_agreement",
        "verdict CSI(b) false",
        "false",
    );
    expect_verdict(&outcome, "lagadonian_csi", "verdict CSI(d) true", "true");
    expect_verdict(
        &outcome,
        "lagadonian_csi",
        "verdict CSI('d') false",
        "false",
    );
    expect_verdict(
        &outcome,
        "lagadonian_all",
        "verdict Phi('d','d') true",
        "true",
    );
    expect_verdict(&outcome, "laputan_csi", "verdict CSI(a) true", "true");
    expect_verdict(&outcome, "laputan_csi", "verdict CSI(b) false", "false");
    expect_verdict(&outcome, "laputan_all", "verdict Phi(b,'a') true", "true");

    assert!(
        elapsed.as_secs_f64() < 1.0,
        "repro took {elapsed:?}, budget is 1s"
    );

    // The command-line surface agrees.
    let output = Command::new(env!("CARGO_BIN_EXE_lagado"))
        .arg("repro-paper")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));

    println!("criterion 1 (verdict reproduction): PASS ({elapsed:?})");
}

#[test]
fn criterion_2_contradiction_reproduction() {
    // Self-reference model, coordinated instances only: exactly one
    // conflict, Leibniz, on the expression d, through the identity d = 'd'.
    let model = self_ref_model();
    let lag = SchemaId::lagadonian();
    let table = verdict_table(&model, &lag, AdmissibilityMode::CsiOnly, &["d"], 2).unwrap();
    let conflicts = find_conflicts(&table, &model, false);
    assert_eq!(conflicts.len(), 1);
    let conflict = &conflicts[0];
    assert_eq!(conflict.subject_object, term_ref("d"));
    assert_eq!(conflict.positive.source_instance.spec_string(), "CSI(d)");
    assert_eq!(conflict.negative.source_instance.spec_string(), "CSI('d')");
    match &conflict.kind {
        ConflictKind::Leibniz { identity } => {
            assert_eq!(identity.left, atom("d"));
            assert_eq!(identity.right, atom("d").quoted());
        }
        other => panic!("expected Leibniz, got {other:?}"),
    }

    // All instances admitted: additionally the direct clash on 'd'.
    let table = verdict_table(&model, &lag, AdmissibilityMode::AllInstances, &["d"], 2).unwrap();
    let conflicts = find_conflicts(&table, &model, false);
    assert!(conflicts.iter().any(|c| {
        matches!(c.kind, ConflictKind::Direct)
            && c.positive.source_instance.spec_string() == "Phi('d','d')"
            && c.negative.source_instance.spec_string() == "CSI('d')"
    }));
    // The Leibniz clash survives widening.
    assert!(conflicts.iter().any(|c| {
        matches!(c.kind, ConflictKind::Leibniz { .. })
            && c.positive.source_instance.spec_string() == "CSI(d)"
            && c.negative.source_instance.spec_string() == "CSI('d')"
    }));

    // Shared-object model: the fixed-subject analogues.
    let model = shared_object_model();
    let lap = SchemaId::laputan();
    let table = verdict_table(&model, &lap, AdmissibilityMode::CsiOnly, &["a", "b"], 1).unwrap();
    let conflicts = find_conflicts(&table, &model, false);
    assert_eq!(conflicts.len(), 1);
    let conflict = &conflicts[0];
    assert_eq!(conflict.subject_object, opaque("v"));
    assert_eq!(conflict.positive.source_instance.spec_string(), "CSI(a)");
    assert_eq!(conflict.negative.source_instance.spec_string(), "CSI(b)");
    match &conflict.kind {
        ConflictKind::Leibniz { identity } => {
            assert_eq!(identity.left, atom("a"));
            assert_eq!(identity.right, atom("b"));
        }
        other => panic!("expected Leibniz, got {other:?}"),
    }

    let table = verdict_table(
        &model,
        &lap,
        AdmissibilityMode::AllInstances,
        &["a", "b"],
        1,
    )
    .unwrap();
    let conflicts = find_conflicts(&table, &model, false);
    assert!(conflicts.iter().any(|c| {
        matches!(c.kind, ConflictKind::Direct)
            && c.positive.source_instance.spec_string() == "Phi(b,'a')"
            && c.negative.source_instance.spec_string() == "CSI(b)"
    }));

    println!("criterion 2 (contradiction reproduction): PASS");
}

#[test]
fn criterion_3_exception_characterization() {
    let started = Instant::now();
    let family = model_family();
    assert_eq!(family.len(), 64);

    for (model, names, depth) in &family {
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let exceptions =
            characterize_exceptions(model, &SchemaId::lagadonian(), &name_refs, *depth).unwrap();
        let self_referring: Vec<Term> = lagado_core::term_universe(&name_refs, *depth)
            .unwrap()
            .into_iter()
            .filter(|t| model.denote(t).unwrap() == Referent::TermRef(t.clone()))
            .collect();
        assert_eq!(
            exceptions, self_referring,
            "mismatch for names {names:?} depth {depth}"
        );
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "took {elapsed:?}, budget is 5s"
    );
    println!(
        "criterion 3 (exception characterization over {} cases): PASS ({elapsed:?})",
        family.len()
    );
}

#[test]
fn criterion_4_oracle_equivalence() {
    let mut instances_checked = 0usize;
    for (model, names, depth) in model_family() {
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        for schema in [SchemaId::lagadonian(), SchemaId::laputan()] {
            for mode in [AdmissibilityMode::CsiOnly, AdmissibilityMode::AllInstances] {
                let table = verdict_table(&model, &schema, mode, &name_refs, depth).unwrap();
                for row in &table.rows {
                    let expected =
                        closed_form(&model, &schema, &row.instance.x_term, &row.instance.y_term);
                    assert_eq!(
                        row.verdict,
                        expected,
                        "{} diverges from the closed form (names {names:?}, depth {depth})",
                        row.instance.spec_string()
                    );
                    instances_checked += 1;
                }
            }
        }
    }
    assert!(
        instances_checked > 1000,
        "family too small: {instances_checked}"
    );
    println!("criterion 4 (oracle equivalence on {instances_checked} instances): PASS");
}

#[test]
fn criterion_5_restoration_properties() {
    let mut lagadonian_checked = 0usize;
    let mut laputan_checked = 0usize;

    for (model, names, depth) in model_family() {
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let universe = lagado_core::term_universe(&name_refs, depth).unwrap();

        // Forbidding self-reference keeps the x-subject schema consistent.
        if check_policy(&model, &Policy::NoSelfReference).passed {
            let table = verdict_table(
                &model,
                &SchemaId::lagadonian(),
                AdmissibilityMode::CsiOnly,
                &name_refs,
                depth,
            )
            .unwrap();
            let conflicts = find_conflicts(&table, &model, false);
            assert!(
                conflicts.is_empty(),
                "restoration failed for names {names:?} depth {depth}"
            );
            lagadonian_checked += 1;
        }

        // Injective naming with an unambiguous designated name keeps the
        // fixed-subject schema consistent: nothing else may co-denote with a.
        let designated_ok = match model.denote(&atom("a")) {
            Err(_) => true,
            Ok(a_referent) => {
                !model.is_self_referring("a").unwrap()
                    && !universe
                        .iter()
                        .filter(|t| **t != atom("a"))
                        .any(|t| model.denote(t).unwrap() == a_referent)
            }
        };
        if check_policy(&model, &Policy::InjectiveNaming).passed && designated_ok {
            let table = verdict_table(
                &model,
                &SchemaId::laputan(),
                AdmissibilityMode::CsiOnly,
                &name_refs,
                depth,
            )
            .unwrap();
            let conflicts = find_conflicts(&table, &model, false);
            assert!(
                conflicts.is_empty(),
                "restoration failed for names {names:?} depth {depth}"
            );
            laputan_checked += 1;
        }
    }

    assert!(
        lagadonian_checked > 10,
        "filter too narrow: {lagadonian_checked}"
    );
    assert!(laputan_checked > 10, "filter too narrow: {laputan_checked}");
    println!(
        "criterion 5 (restoration: {lagadonian_checked} + {laputan_checked} restricted models \
         conflict-free): PASS"
    );
}

#[test]
fn criterion_6_deictic_demo() {
    let model = self_ref_model();
    assert_eq!(
        evaluate_deictic(&model, &DeicticSubject::Replaced(atom("d"))).unwrap(),
        DeicticOutcome::True
    );
    assert_eq!(
        evaluate_deictic(&model, &DeicticSubject::Replaced(atom("d").quoted())).unwrap(),
        DeicticOutcome::False
    );
    assert_eq!(
        evaluate_deictic(&model, &DeicticSubject::Assigned(atom("d"))).unwrap(),
        DeicticOutcome::Indeterminate
    );
    println!("criterion 6 (deictic demo): PASS");
}

#[test]
fn criterion_7_negation_free_check() {
    // Negation markers that must not occur as words in the object language's
    // rendered sentences or in the schema templates.
    const NEGATION_WORDS: [&str; 6] = ["not", "no", "non", "never", "neither", "nor"];
    let contains_negation = |text: &str| {
        if text.contains('\u{ac}') || text.contains("n't") {
            return true;
        }
        text.to_lowercase()
            .split(|c: char| !c.is_ascii_alphanumeric())
            .any(|word| NEGATION_WORDS.contains(&word))
    };

    // Schema templates.
    for template in [SchemaTemplate::lagadonian(), SchemaTemplate::laputan()] {
        assert!(!contains_negation(&template.predicate_name));
        assert!(!contains_negation(&template.symbol));
    }

    // Every rendered instance over the contradiction-producing tables.
    let mut tables: Vec<(Model, VerdictTable)> = Vec::new();
    for mode in [AdmissibilityMode::CsiOnly, AdmissibilityMode::AllInstances] {
        let model = self_ref_model();
        let table = verdict_table(&model, &SchemaId::lagadonian(), mode, &["d"], 2).unwrap();
        tables.push((model, table));
        let model = shared_object_model();
        let table = verdict_table(&model, &SchemaId::laputan(), mode, &["a", "b"], 1).unwrap();
        tables.push((model, table));
    }
    let mut conflict_count = 0usize;
    for (model, table) in &tables {
        for row in &table.rows {
            let rendered = render_instance(model.schemas(), &row.instance).unwrap();
            assert!(!contains_negation(&rendered), "negation in: {rendered}");
        }
        conflict_count += find_conflicts(table, model, false).len();
    }
    assert!(conflict_count > 0, "conflicts must still be reported");

    println!(
        "criterion 7 (negation-free language, {conflict_count} conflicts still reported): PASS"
    );
}

#[test]
fn criterion_8_syntax_robustness() {
    // 1,000 deterministic pseudo-random terms, depth <= 5 over 4 names.
    let names = ["a", "b", "d", "venus_2"];
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for i in 0..1000 {
        let name = names[(next() % 4) as usize];
        let depth = (next() % 6) as usize;
        let mut term = atom(name);
        for _ in 0..depth {
            term = term.quoted();
        }
        assert_eq!(
            Term::parse(&term.render()).unwrap(),
            term,
            "roundtrip failure at sample {i}"
        );
        assert_eq!(term.quoted().unquoted().unwrap(), term);
        assert_ne!(term.quoted(), term);
    }

    // Specified error paths.
    assert!(matches!(
        Model::build([
            ("a".to_string(), opaque("v")),
            ("a".to_string(), opaque("w")),
        ]),
        Err(lagado_core::Error::DuplicateStipulation(_))
    ));
    let model = Model::build([("a".to_string(), opaque("v"))]).unwrap();
    assert!(matches!(
        model.denote(&atom("q")),
        Err(lagado_core::Error::UnstipulatedName(_))
    ));

    // Repeated runs are byte-identical.
    let scenario = Scenario::parse(
        "name determinism\nstipulate d -> term d\nschema lagadonian\nmode all\ndepth 2\n",
    )
    .unwrap();
    let (first, code_first) = run_check(&scenario, false).unwrap();
    let (second, code_second) = run_check(&scenario, false).unwrap();
    assert_eq!(code_first, code_second);
    for format in [
        lagado_cli::report::ReportFormat::Text,
        lagado_cli::report::ReportFormat::Json,
    ] {
        assert_eq!(
            lagado_cli::report::write_report(&first, format),
            lagado_cli::report::write_report(&second, format)
        );
    }

    println!("criterion 8 (syntax robustness, 1000 roundtrips): PASS");
}
