//! Machine- and human-readable reports for a scenario run.
//!
//! The structured format is a JSON document with the top-level keys
//! `scenario`, `table`, `conflicts`, `certificate`, `policies`, `traces`,
//! `version`, in that order, serialized with stable field order so equal
//! inputs produce byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;

use lagado_core::{
    AdmissibilityMode, Certificate, ConflictKind, ConflictReport, Instance, PolicyReport,
    PolicyViolation, Referent, SchemaId, Term, Trace, Verdict,
};

/// Output format for [`write_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct StipulationEcho {
    pub name: String,
    pub referent: Referent,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpectationResult {
    pub expectation: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioEcho {
    pub name: String,
    pub stipulations: Vec<StipulationEcho>,
    pub schema: SchemaId,
    pub mode: AdmissibilityMode,
    pub universe: Vec<String>,
    pub depth: usize,
    pub policies: Vec<String>,
    pub expectations: Vec<ExpectationResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowReport {
    pub instance: Instance,
    pub rendered: String,
    pub subject_term: Term,
    pub subject_referent: Referent,
    pub verdict: Verdict,
    pub trace_id: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub schema: SchemaId,
    pub mode: AdmissibilityMode,
    pub names: Vec<String>,
    pub depth: usize,
    pub rows: Vec<RowReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceEntry {
    pub id: String,
    pub instance: String,
    pub steps: Trace,
    pub text: Vec<String>,
}

/// Everything a `check` run produces.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub scenario: ScenarioEcho,
    pub table: TableReport,
    pub conflicts: Vec<ConflictReport>,
    pub certificate: Option<Certificate>,
    pub policies: Vec<PolicyReport>,
    pub traces: Vec<TraceEntry>,
    pub version: String,
}

impl Report {
    pub fn expectations_passed(&self) -> bool {
        self.scenario.expectations.iter().all(|e| e.passed)
    }
}

/// Serialize a report; text for humans, JSON for machines. Stable bytes:
/// the same report always serializes identically.
pub fn write_report(report: &Report, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Text => report_text(report).into_bytes(),
        ReportFormat::Json => {
            let mut bytes =
                serde_json::to_vec_pretty(report).expect("report serialization cannot fail");
            bytes.push(b'\n');
            bytes
        }
    }
}

fn describe_violation(v: &PolicyViolation) -> String {
    match v {
        PolicyViolation::SelfReferringName { name } => {
            format!("self-referring name {name}")
        }
        PolicyViolation::NamingCycle { names } => {
            format!("naming cycle {}", names.join(" -> "))
        }
        PolicyViolation::SharedReferent { referent, names } => {
            format!("{} shared by names {}", referent, names.join(", "))
        }
        PolicyViolation::TermValuedName { name, target } => {
            format!("name {name} names the expression {target}")
        }
    }
}

/// Human-readable rendering of the whole report.
pub fn report_text(report: &Report) -> String {
    let mut out = String::new();
    let s = &report.scenario;
    let _ = writeln!(out, "scenario: {}", s.name);
    for stip in &s.stipulations {
        let _ = writeln!(out, "  {} names {}", stip.name, stip.referent);
    }
    let _ = writeln!(
        out,
        "  schema {} | mode {} | universe {{{}}} | depth <= {}",
        s.schema,
        s.mode,
        s.universe.join(", "),
        s.depth
    );
    let _ = writeln!(out);

    let _ = writeln!(out, "verdict table ({} rows)", report.table.rows.len());
    let spec_width = report
        .table
        .rows
        .iter()
        .map(|r| r.instance.spec_string().len())
        .max()
        .unwrap_or(8)
        .max("instance".len());
    let subject_width = report
        .table
        .rows
        .iter()
        .map(|r| r.subject_term.render().len())
        .max()
        .unwrap_or(7)
        .max("subject".len());
    let _ = writeln!(
        out,
        "  {:>4}  {:<spec_width$}  {:<4}  {:<subject_width$}  {:<20}  verdict",
        "id", "instance", "csi", "subject", "denotes",
    );
    for row in &report.table.rows {
        let _ = writeln!(
            out,
            "  {:>4}  {:<spec_width$}  {:<4}  {:<subject_width$}  {:<20}  {}",
            row.trace_id,
            row.instance.spec_string(),
            if row.instance.is_csi() { "yes" } else { "no" },
            row.subject_term.render(),
            row.subject_referent.to_string(),
            row.verdict,
        );
    }
    let _ = writeln!(out);

    let _ = writeln!(out, "conflicts ({})", report.conflicts.len());
    for (i, conflict) in report.conflicts.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {}. {} conflict on {} [{}]",
            i + 1,
            conflict.kind.label(),
            conflict.subject_object,
            conflict.provenance.label(),
        );
        if let ConflictKind::Leibniz { identity } = &conflict.kind {
            let _ = writeln!(out, "     identity: {identity}");
        }
        let _ = writeln!(
            out,
            "     + {:<6} {} (subject {})",
            conflict.positive.verdict.to_string(),
            conflict.positive.source_instance.spec_string(),
            conflict.positive.subject_term,
        );
        let _ = writeln!(
            out,
            "     - {:<6} {} (subject {})",
            conflict.negative.verdict.to_string(),
            conflict.negative.source_instance.spec_string(),
            conflict.negative.subject_term,
        );
    }
    let _ = writeln!(out);

    match &report.certificate {
        Some(cert) => {
            let _ = writeln!(out, "certificate: {}", cert.statement);
        }
        None => {
            let _ = writeln!(out, "certificate: none (conflicts found)");
        }
    }
    let _ = writeln!(out);

    let _ = writeln!(out, "policies ({})", report.policies.len());
    for policy in &report.policies {
        if policy.passed {
            let _ = writeln!(out, "  pass  {}", policy.policy);
        } else {
            let _ = writeln!(out, "  FAIL  {}", policy.policy);
            for violation in &policy.violations {
                let _ = writeln!(out, "        {}", describe_violation(violation));
            }
        }
    }
    let _ = writeln!(out);

    if !s.expectations.is_empty() {
        let _ = writeln!(out, "expectations ({})", s.expectations.len());
        for result in &s.expectations {
            if result.passed {
                let _ = writeln!(out, "  ok    {}", result.expectation);
            } else {
                let _ = writeln!(
                    out,
                    "  FAIL  {} (expected {}, actual {})",
                    result.expectation, result.expected, result.actual
                );
            }
        }
        let _ = writeln!(out);
    }

    let _ = writeln!(out, "traces");
    for entry in &report.traces {
        let _ = writeln!(out, "  {} {}", entry.id, entry.instance);
        for line in &entry.text {
            let _ = writeln!(out, "     {line}");
        }
    }
    let _ = writeln!(out, "version: {}", report.version);
    out
}
