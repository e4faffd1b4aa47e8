//! The check/trace/table pipelines behind the CLI commands.

use std::fmt::Write as _;

use lagado_core::{
    Certificate, ConflictKind, ConflictReport, Model, Verdict, check_policy,
    consistency_certificate, evaluate_instance, find_conflicts, render_instance, verdict_table,
};

use crate::error::CliError;
use crate::report::{
    ExpectationResult, Report, RowReport, ScenarioEcho, StipulationEcho, TableReport, TraceEntry,
};
use crate::scenario::{Expectation, ExpectedConflictKind, Scenario};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit codes: 0 certificate issued, 2 conflicts found, 1 error (including
/// failed expectations).
pub fn run_check(scenario: &Scenario, include_vacuous: bool) -> Result<(Report, i32), CliError> {
    let model = scenario.build_model()?;
    let names = scenario.universe_refs();
    let table = verdict_table(
        &model,
        &scenario.schema,
        scenario.mode,
        &names,
        scenario.depth,
    )?;
    let conflicts = find_conflicts(&table, &model, include_vacuous);
    let certificate: Option<Certificate> = if conflicts.is_empty() {
        consistency_certificate(
            &model,
            &scenario.schema,
            scenario.mode,
            &names,
            scenario.depth,
        )?
        .certificate()
        .cloned()
    } else {
        None
    };
    let policies = scenario
        .policies
        .iter()
        .map(|p| check_policy(&model, p))
        .collect::<Vec<_>>();

    let expectations = scenario
        .expectations
        .iter()
        .map(|e| check_expectation(&model, scenario, &table.rows, &conflicts, &certificate, e))
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut rows = Vec::with_capacity(table.rows.len());
    let mut traces = Vec::with_capacity(table.rows.len());
    for (i, row) in table.rows.iter().enumerate() {
        let trace_id = format!("t{i}");
        let rendered = render_instance(model.schemas(), &row.instance)?;
        let text: Vec<String> = row.trace.render(&model).lines().map(String::from).collect();
        traces.push(TraceEntry {
            id: trace_id.clone(),
            instance: row.instance.spec_string(),
            steps: row.trace.clone(),
            text,
        });
        rows.push(RowReport {
            instance: row.instance.clone(),
            rendered,
            subject_term: row.subject_term.clone(),
            subject_referent: row.subject_referent.clone(),
            verdict: row.verdict,
            trace_id,
        });
    }

    let report = Report {
        scenario: ScenarioEcho {
            name: scenario.name.clone(),
            stipulations: scenario
                .stipulations
                .iter()
                .map(|(name, referent)| StipulationEcho {
                    name: name.clone(),
                    referent: referent.clone(),
                })
                .collect(),
            schema: scenario.schema.clone(),
            mode: scenario.mode,
            universe: scenario.universe.clone(),
            depth: scenario.depth,
            policies: scenario.policies.iter().map(|p| p.to_string()).collect(),
            expectations,
        },
        table: TableReport {
            schema: table.schema.clone(),
            mode: table.mode,
            names: table.names.clone(),
            depth: table.depth,
            rows,
        },
        conflicts,
        certificate,
        policies,
        traces,
        version: VERSION.to_string(),
    };

    let exit_code = if !report.expectations_passed() {
        1
    } else if report.conflicts.is_empty() {
        0
    } else {
        2
    };
    Ok((report, exit_code))
}

fn verdict_actual(verdict: Verdict) -> &'static str {
    match (verdict.value, verdict.vacuous) {
        (true, true) => "vacuous",
        (true, false) => "true",
        (false, _) => "false",
    }
}

fn check_expectation(
    model: &Model,
    scenario: &Scenario,
    rows: &[lagado_core::TableRow],
    conflicts: &[ConflictReport],
    certificate: &Option<Certificate>,
    expectation: &Expectation,
) -> Result<ExpectationResult, CliError> {
    let (expected, actual) = match expectation {
        Expectation::Verdict { instance, expected } => {
            let instance = instance.to_instance(model.schemas(), &scenario.schema)?;
            // Prefer the table row; fall back to a fresh evaluation when the
            // named instance is outside the admissible set.
            let verdict = match rows.iter().find(|r| r.instance == instance) {
                Some(row) => row.verdict,
                None => evaluate_instance(model, &instance)?.0,
            };
            (expected.to_string(), verdict_actual(verdict).to_string())
        }
        Expectation::Conflict {
            kind,
            positive,
            negative,
        } => {
            let positive = positive.to_instance(model.schemas(), &scenario.schema)?;
            let negative = negative.to_instance(model.schemas(), &scenario.schema)?;
            let found = conflicts.iter().any(|c| {
                let kind_matches = match kind {
                    ExpectedConflictKind::Direct => matches!(c.kind, ConflictKind::Direct),
                    ExpectedConflictKind::Leibniz => {
                        matches!(c.kind, ConflictKind::Leibniz { .. })
                    }
                };
                kind_matches
                    && c.positive.source_instance == positive
                    && c.negative.source_instance == negative
            });
            (
                "present".to_string(),
                if found { "present" } else { "absent" }.to_string(),
            )
        }
        Expectation::ConflictCount(n) => (n.to_string(), conflicts.len().to_string()),
        Expectation::Certificate => (
            "certificate".to_string(),
            if certificate.is_some() {
                "certificate"
            } else {
                "conflicts"
            }
            .to_string(),
        ),
    };
    Ok(ExpectationResult {
        expectation: expectation.to_string(),
        passed: expected == actual,
        expected,
        actual,
    })
}

/// Evaluate one instance under the scenario's model and render its numbered
/// derivation.
pub fn run_trace(scenario: &Scenario, spec_text: &str) -> Result<String, CliError> {
    let model = scenario.build_model()?;
    let spec = crate::scenario::InstanceSpec::parse(spec_text).map_err(CliError::InstanceSpec)?;
    let instance = spec.to_instance(model.schemas(), &scenario.schema)?;
    let evaluated = lagado_core::evaluate_rendered(&model, &instance)?;

    let mut out = String::new();
    let _ = writeln!(out, "{}: {}", instance.spec_string(), evaluated.rendered);
    let _ = writeln!(out);
    out.push_str(&evaluated.trace.render(&model));
    let _ = writeln!(out, "verdict: {}", evaluated.verdict);
    Ok(out)
}

/// Evaluate the scenario's verdict table and render it as text.
pub fn run_table(scenario: &Scenario) -> Result<String, CliError> {
    let (report, _) = run_check(scenario, false)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "verdict table for {}: schema {} | mode {} | universe {{{}}} | depth <= {}",
        scenario.name,
        scenario.schema,
        scenario.mode,
        scenario.universe.join(", "),
        scenario.depth,
    );
    for row in &report.table.rows {
        let _ = writeln!(
            out,
            "  {:<16} {:<6} subject {:<8} denotes {:<20} {}",
            row.instance.spec_string(),
            if row.instance.is_csi() {
                "csi"
            } else {
                "plain"
            },
            row.subject_term.render(),
            row.subject_referent.to_string(),
            row.verdict,
        );
    }
    Ok(out)
}
