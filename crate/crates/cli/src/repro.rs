//! The built-in reproduction corpus behind `repro-paper`.
//!
//! Five embedded scenarios cover both schemas in both admissibility modes
//! plus the agreement case, each carrying its expected verdicts and
//! conflicts as `expect` lines; a sixth section runs the self-pointing demo
//! sentence. The command re-runs everything, diffs actual against expected,
//! and succeeds only on an exact match.

use std::fmt::Write as _;

use lagado_core::{
    DeicticInstance, DeicticOutcome, DeicticSubject, Model, Referent, Term, evaluate_deictic,
};

use crate::error::CliError;
use crate::run::run_check;
use crate::scenario::Scenario;

pub const LAGADONIAN_CSI: &str = include_str!("../scenarios/lagadonian_csi.scn");
pub const LAGADONIAN_ALL: &str = include_str!("../scenarios/lagadonian_all.scn");
pub const LAPUTAN_CSI: &str = include_str!("../scenarios/laputan_csi.scn");
pub const LAPUTAN_ALL: &str = include_str!("../scenarios/laputan_all.scn");
pub const LAGADONIAN_AGREEMENT: &str = include_str!("../scenarios/lagadonian_agreement.scn");

/// The embedded scenario corpus, in run order.
pub fn builtin_scenarios() -> Vec<(&'static str, &'static str)> {
    vec![
        ("lagadonian_csi", LAGADONIAN_CSI),
        ("lagadonian_all", LAGADONIAN_ALL),
        ("laputan_csi", LAPUTAN_CSI),
        ("laputan_all", LAPUTAN_ALL),
        ("lagadonian_agreement", LAGADONIAN_AGREEMENT),
    ]
}

/// One expected-vs-actual line of the reproduction diff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproLine {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

/// One scenario (or the deictic demo) in the reproduction run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproSection {
    pub name: String,
    pub lines: Vec<ReproLine>,
}

/// Outcome of the whole reproduction run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproOutcome {
    pub sections: Vec<ReproSection>,
}

impl ReproOutcome {
    pub fn passed(&self) -> bool {
        self.sections
            .iter()
            .all(|s| s.lines.iter().all(|l| l.passed))
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() { 0 } else { 1 }
    }

    /// The diff table, one line per expectation.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for section in &self.sections {
            let _ = writeln!(out, "{}", section.name);
            for line in &section.lines {
                if line.passed {
                    let _ = writeln!(out, "  ok    {} = {}", line.label, line.actual);
                } else {
                    let _ = writeln!(
                        out,
                        "  FAIL  {} (expected {}, actual {})",
                        line.label, line.expected, line.actual
                    );
                }
            }
        }
        let total: usize = self.sections.iter().map(|s| s.lines.len()).sum();
        let failed: usize = self
            .sections
            .iter()
            .flat_map(|s| &s.lines)
            .filter(|l| !l.passed)
            .count();
        if failed == 0 {
            let _ = writeln!(out, "repro-paper: all {total} expectations matched");
        } else {
            let _ = writeln!(out, "repro-paper: {failed} of {total} expectations FAILED");
        }
        out
    }
}

/// Run one scenario text and convert its expectation results to diff lines.
pub fn run_scenario_section(name: &str, text: &str) -> Result<ReproSection, CliError> {
    let scenario = Scenario::parse(text)?;
    let (report, _) = run_check(&scenario, false)?;
    let lines = report
        .scenario
        .expectations
        .iter()
        .map(|r| ReproLine {
            label: r.expectation.clone(),
            expected: r.expected.clone(),
            actual: r.actual.clone(),
            passed: r.passed,
        })
        .collect();
    Ok(ReproSection {
        name: name.to_string(),
        lines,
    })
}

/// The self-pointing demo: a sentence whose description denotes the very
/// instance it occurs in. Replacing the variable by d yields a truth,
/// replacing it by 'd' yields a falsehood, and a mere assignment leaves no
/// fact of the matter.
pub fn deictic_section() -> Result<ReproSection, CliError> {
    let d = Term::atomic("d")?;
    let model = Model::build([("d".to_string(), Referent::TermRef(d.clone()))])?;

    let cases = [
        (DeicticSubject::Replaced(d.clone()), DeicticOutcome::True),
        (DeicticSubject::Replaced(d.quoted()), DeicticOutcome::False),
        (
            DeicticSubject::Assigned(d.clone()),
            DeicticOutcome::Indeterminate,
        ),
    ];
    let mut lines = Vec::new();
    for (subject, expected) in cases {
        let actual = evaluate_deictic(&model, &subject)?;
        let label = match &subject {
            DeicticSubject::Replaced(t) => {
                format!(
                    "replaced by {t}: {}",
                    DeicticInstance::new(t.clone()).render()
                )
            }
            DeicticSubject::Assigned(t) => {
                format!("open formula with {t} assigned to x")
            }
        };
        lines.push(ReproLine {
            label,
            expected: expected.to_string(),
            actual: actual.to_string(),
            passed: actual == expected,
        });
    }
    Ok(ReproSection {
        name: "deictic demo".to_string(),
        lines,
    })
}

/// Run the whole corpus. Self-contained: no input files.
pub fn repro_paper() -> Result<ReproOutcome, CliError> {
    let mut sections = Vec::new();
    for (name, text) in builtin_scenarios() {
        sections.push(run_scenario_section(name, text)?);
    }
    sections.push(deictic_section()?);
    Ok(ReproOutcome { sections })
}
