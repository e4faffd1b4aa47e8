//! Bounded analysis: verdict tables, conflict detection, certificates.
//!
//! The object language has infinitely many terms, but a coordinated
//! instance's verdict depends only on what its subject denotes, so a small
//! universe (names × quotation depth) already exercises every case shape.
//! Certificates therefore always state the exact bound they were checked at.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::eval::{AttributedVerdict, Trace, Verdict, attributed_verdict, classify_identity};
use crate::model::{IdentityFact, Model, Referent};
use crate::schema::{Instance, SchemaId, mk_csi, mk_instance};
use crate::term::{Term, term_universe};

/// Which substitution instances count as laying down a condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmissibilityMode {
    /// Only coordinated substitution instances.
    CsiOnly,
    /// Every substitution instance over the universe. The coordinated
    /// instances are always included, so the csi-only instance set is a
    /// subset of this one on the same universe.
    AllInstances,
}

impl std::fmt::Display for AdmissibilityMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdmissibilityMode::CsiOnly => f.write_str("csi"),
            AdmissibilityMode::AllInstances => f.write_str("all"),
        }
    }
}

impl Serialize for AdmissibilityMode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// One evaluated instance in a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub instance: Instance,
    pub is_csi: bool,
    /// The instance's grammatical subject: its x-slot term.
    pub subject_term: Term,
    pub subject_referent: Referent,
    pub verdict: Verdict,
    pub trace: Trace,
}

/// Every admissible instance over a bounded universe, evaluated, in
/// deterministic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictTable {
    pub schema: SchemaId,
    pub mode: AdmissibilityMode,
    pub names: Vec<String>,
    pub depth: usize,
    pub rows: Vec<TableRow>,
}

impl VerdictTable {
    /// Rows grouped by the object their subject denotes, in referent order.
    pub fn rows_by_object(&self) -> Vec<(Referent, Vec<&TableRow>)> {
        let mut grouped: Vec<(Referent, Vec<&TableRow>)> = Vec::new();
        for row in &self.rows {
            match grouped.iter_mut().find(|(r, _)| *r == row.subject_referent) {
                Some((_, rows)) => rows.push(row),
                None => grouped.push((row.subject_referent.clone(), vec![row])),
            }
        }
        grouped.sort_by(|a, b| a.0.cmp(&b.0));
        grouped
    }
}

/// Build and evaluate the table of admissible instances for a schema over
/// the universe of the given names and quotation depth.
///
/// In csi-only mode there is one row per universe term α, for the
/// coordinated instance of α; its y-slot quotation may exceed the universe
/// depth by one, which is accepted bookkeeping. In all-instances mode every
/// (x, y) slot pair over the universe yields a row, and the coordinated
/// instances of maximal-depth terms are appended so the csi-only set stays
/// included.
pub fn verdict_table(
    model: &Model,
    schema: &SchemaId,
    mode: AdmissibilityMode,
    names: &[&str],
    depth: usize,
) -> Result<VerdictTable> {
    let universe = term_universe(names, depth)?;
    let mut instances: Vec<Instance> = Vec::new();
    match mode {
        AdmissibilityMode::CsiOnly => {
            for alpha in &universe {
                instances.push(mk_csi(model.schemas(), schema, alpha.clone())?);
            }
        }
        AdmissibilityMode::AllInstances => {
            for x in &universe {
                for y in &universe {
                    instances.push(mk_instance(model.schemas(), schema, x.clone(), y.clone())?);
                }
                if x.depth() == depth {
                    instances.push(mk_csi(model.schemas(), schema, x.clone())?);
                }
            }
        }
    }

    let mut rows = Vec::with_capacity(instances.len());
    for instance in instances {
        let av = attributed_verdict(model, &instance)?;
        rows.push(TableRow {
            is_csi: instance.is_csi(),
            subject_term: av.subject_term,
            subject_referent: av.subject_object,
            verdict: av.verdict,
            trace: av.trace,
            instance,
        });
    }

    Ok(VerdictTable {
        schema: schema.clone(),
        mode,
        names: names.iter().map(|n| n.to_string()).collect(),
        depth,
        rows,
    })
}

/// How two clashing verdicts are combined into a contradiction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConflictKind {
    /// Same subject term assigned opposite verdicts; no identity needed.
    Direct,
    /// Type-distinct co-denoting subject terms assigned opposite verdicts,
    /// combined through the recorded identity.
    Leibniz { identity: IdentityFact },
}

impl ConflictKind {
    pub fn label(&self) -> &'static str {
        match self {
            ConflictKind::Direct => "direct",
            ConflictKind::Leibniz { .. } => "leibniz",
        }
    }
}

/// Whether a conflict instantiates one of the derivation shapes in the
/// built-in `repro-paper` corpus: a Leibniz clash between two coordinated
/// instances, or a direct clash whose positive witness is uncoordinated and
/// whose negative witness is coordinated. Anything else is reported as
/// `beyond-paper`: the tool asserts nothing about whether such instances
/// ought to count as conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConflictProvenance {
    Paper,
    BeyondPaper,
}

impl ConflictProvenance {
    pub fn label(&self) -> &'static str {
        match self {
            ConflictProvenance::Paper => "paper",
            ConflictProvenance::BeyondPaper => "beyond-paper",
        }
    }
}

impl Serialize for ConflictProvenance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

/// A witnessed violation of noncontradiction: two instances assigning
/// opposite verdicts to one object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictReport {
    pub subject_object: Referent,
    pub positive: AttributedVerdict,
    pub negative: AttributedVerdict,
    pub kind: ConflictKind,
    pub includes_vacuous: bool,
    pub provenance: ConflictProvenance,
}

impl Serialize for ConflictReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ConflictReport", 7)?;
        s.serialize_field("kind", self.kind.label())?;
        match &self.kind {
            ConflictKind::Leibniz { identity } => s.serialize_field("identity", identity)?,
            ConflictKind::Direct => s.serialize_field("identity", &None::<IdentityFact>)?,
        }
        s.serialize_field("subject_object", &self.subject_object)?;
        s.serialize_field("positive", &self.positive)?;
        s.serialize_field("negative", &self.negative)?;
        s.serialize_field("includes_vacuous", &self.includes_vacuous)?;
        s.serialize_field("provenance", &self.provenance)?;
        s.end()
    }
}

/// Find every conflicting verdict pair in a table. Vacuously true rows are
/// excluded as witnesses unless `include_vacuous` is set. Reports come out
/// in row order of the pair (positive-or-negative first occurrence), each
/// carrying both derivation traces.
pub fn find_conflicts(
    table: &VerdictTable,
    model: &Model,
    include_vacuous: bool,
) -> Vec<ConflictReport> {
    let mut reports = Vec::new();
    for (i, first) in table.rows.iter().enumerate() {
        for second in table.rows.iter().skip(i + 1) {
            if first.verdict.value == second.verdict.value {
                continue;
            }
            let (pos, neg) = if first.verdict.value {
                (first, second)
            } else {
                (second, first)
            };
            if pos.verdict.vacuous && !include_vacuous {
                continue;
            }
            let kind = if pos.subject_term == neg.subject_term {
                ConflictKind::Direct
            } else if pos.subject_referent == neg.subject_referent {
                let identity = classify_identity(model, &pos.subject_term, &neg.subject_term)
                    .expect("table rows have defined denotations");
                ConflictKind::Leibniz { identity }
            } else {
                continue;
            };
            let provenance = match &kind {
                ConflictKind::Leibniz { .. } if pos.is_csi && neg.is_csi => {
                    ConflictProvenance::Paper
                }
                ConflictKind::Direct if !pos.is_csi && neg.is_csi => ConflictProvenance::Paper,
                _ => ConflictProvenance::BeyondPaper,
            };
            reports.push(ConflictReport {
                subject_object: pos.subject_referent.clone(),
                positive: row_verdict(pos),
                negative: row_verdict(neg),
                includes_vacuous: pos.verdict.vacuous || neg.verdict.vacuous,
                kind,
                provenance,
            });
        }
    }
    reports
}

fn row_verdict(row: &TableRow) -> AttributedVerdict {
    AttributedVerdict {
        subject_term: row.subject_term.clone(),
        subject_object: row.subject_referent.clone(),
        verdict: row.verdict,
        source_instance: row.instance.clone(),
        route: crate::eval::VerdictRoute::PlainEvaluation,
        trace: row.trace.clone(),
    }
}

/// A machine-checked statement that a model/schema/mode produced no
/// conflicts up to the stated universe bound. It claims nothing beyond that
/// bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub schema: SchemaId,
    pub mode: AdmissibilityMode,
    pub names: Vec<String>,
    pub depth: usize,
    pub instances_checked: usize,
    pub statement: String,
}

/// Certificate or the conflicts that blocked it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsistencyOutcome {
    Certified(Certificate),
    Conflicted(Vec<ConflictReport>),
}

impl ConsistencyOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ConsistencyOutcome::Certified(c) => Some(c),
            ConsistencyOutcome::Conflicted(_) => None,
        }
    }

    pub fn conflicts(&self) -> &[ConflictReport] {
        match self {
            ConsistencyOutcome::Certified(_) => &[],
            ConsistencyOutcome::Conflicted(reports) => reports,
        }
    }
}

/// Build the table, look for conflicts, and either certify consistency up to
/// the bound or return the conflicts found.
pub fn consistency_certificate(
    model: &Model,
    schema: &SchemaId,
    mode: AdmissibilityMode,
    names: &[&str],
    depth: usize,
) -> Result<ConsistencyOutcome> {
    let table = verdict_table(model, schema, mode, names, depth)?;
    let conflicts = find_conflicts(&table, model, false);
    if conflicts.is_empty() {
        let statement = format!(
            "no conflicting verdict pair among the {count} admissible instances of schema \
             {schema} in mode {mode} over names {{{names}}} at quotation depth <= {depth}",
            count = table.rows.len(),
            schema = schema,
            mode = mode,
            names = names.join(", "),
            depth = depth,
        );
        Ok(ConsistencyOutcome::Certified(Certificate {
            schema: schema.clone(),
            mode,
            names: names.iter().map(|n| n.to_string()).collect(),
            depth,
            instances_checked: table.rows.len(),
            statement,
        }))
    } else {
        Ok(ConsistencyOutcome::Conflicted(conflicts))
    }
}

/// All universe terms whose coordinated instance comes out true,
/// non-vacuously: the exceptions to the rule that coordinated instances
/// reject their subjects.
pub fn characterize_exceptions(
    model: &Model,
    schema: &SchemaId,
    names: &[&str],
    depth: usize,
) -> Result<Vec<Term>> {
    let table = verdict_table(model, schema, AdmissibilityMode::CsiOnly, names, depth)?;
    Ok(table
        .rows
        .into_iter()
        .filter(|row| row.verdict.value && !row.verdict.vacuous)
        .map(|row| row.subject_term)
        .collect())
}
