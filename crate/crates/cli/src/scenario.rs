//! Scenario files: a line-oriented plain-text format describing a model, a
//! schema/mode/universe selection, policies to check, and optional expected
//! outcomes that turn a scenario into an executable fixture.
//!
//! ```text
//! # comments and blank lines are ignored
//! name self-referring name, coordinated instances
//! stipulate d -> term d
//! stipulate a -> obj venus
//! schema lagadonian
//! mode csi
//! universe d a
//! depth 2
//! policy no-self-reference
//! expect verdict CSI(d) true
//! expect conflict leibniz CSI(d) CSI('d')
//! expect conflicts 1
//! expect certificate
//! ```
//!
//! `universe` defaults to the stipulated names in stipulation order. Instance
//! specs are written `CSI(<term>)` or `Phi(<term>,<term>)`.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use lagado_core::{
    AdmissibilityMode, Instance, Model, Policy, Referent, SchemaId, SchemaRegistry, Term, mk_csi,
    mk_instance,
};

use crate::error::CliError;

/// An instance named by its slots, before a schema is attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSpec {
    /// `CSI(t)`: the coordinated instance of `t`.
    Csi(Term),
    /// `Phi(x,y)`: the instance with those slot terms.
    Phi(Term, Term),
}

impl InstanceSpec {
    pub fn parse(text: &str) -> Result<InstanceSpec, String> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix("CSI(").and_then(|s| s.strip_suffix(')')) {
            let term = Term::parse(inner.trim()).map_err(|e| e.to_string())?;
            return Ok(InstanceSpec::Csi(term));
        }
        if let Some(inner) = text.strip_prefix("Phi(").and_then(|s| s.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 2 {
                return Err(format!("expected two slot terms in `{text}`"));
            }
            let x = Term::parse(parts[0].trim()).map_err(|e| e.to_string())?;
            let y = Term::parse(parts[1].trim()).map_err(|e| e.to_string())?;
            return Ok(InstanceSpec::Phi(x, y));
        }
        Err(format!(
            "instance spec must look like CSI(<term>) or Phi(<term>,<term>), got `{text}`"
        ))
    }

    pub fn to_instance(
        &self,
        registry: &SchemaRegistry,
        schema: &SchemaId,
    ) -> lagado_core::Result<Instance> {
        match self {
            InstanceSpec::Csi(alpha) => mk_csi(registry, schema, alpha.clone()),
            InstanceSpec::Phi(x, y) => mk_instance(registry, schema, x.clone(), y.clone()),
        }
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSpec::Csi(t) => write!(f, "CSI({t})"),
            InstanceSpec::Phi(x, y) => write!(f, "Phi({x},{y})"),
        }
    }
}

/// Expected verdict of one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictExpectation {
    True,
    False,
    /// Vacuously true.
    Vacuous,
}

impl fmt::Display for VerdictExpectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictExpectation::True => f.write_str("true"),
            VerdictExpectation::False => f.write_str("false"),
            VerdictExpectation::Vacuous => f.write_str("vacuous"),
        }
    }
}

/// Which conflict kind an `expect conflict` line names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedConflictKind {
    Direct,
    Leibniz,
}

impl fmt::Display for ExpectedConflictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedConflictKind::Direct => f.write_str("direct"),
            ExpectedConflictKind::Leibniz => f.write_str("leibniz"),
        }
    }
}

/// One `expect` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Verdict {
        instance: InstanceSpec,
        expected: VerdictExpectation,
    },
    Conflict {
        kind: ExpectedConflictKind,
        positive: InstanceSpec,
        negative: InstanceSpec,
    },
    ConflictCount(usize),
    Certificate,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Verdict { instance, expected } => {
                write!(f, "verdict {instance} {expected}")
            }
            Expectation::Conflict {
                kind,
                positive,
                negative,
            } => write!(f, "conflict {kind} {positive} {negative}"),
            Expectation::ConflictCount(n) => write!(f, "conflicts {n}"),
            Expectation::Certificate => f.write_str("certificate"),
        }
    }
}

/// A parsed scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub stipulations: Vec<(String, Referent)>,
    pub schema: SchemaId,
    pub mode: AdmissibilityMode,
    pub universe: Vec<String>,
    pub depth: usize,
    pub policies: Vec<Policy>,
    pub expectations: Vec<Expectation>,
}

impl Scenario {
    /// Parse scenario text. Errors carry the 1-based line number.
    pub fn parse(text: &str) -> Result<Scenario, CliError> {
        let mut name: Option<String> = None;
        let mut stipulations: Vec<(String, Referent)> = Vec::new();
        let mut schema: Option<SchemaId> = None;
        let mut mode: Option<AdmissibilityMode> = None;
        let mut universe: Option<Vec<String>> = None;
        let mut depth: Option<usize> = None;
        let mut policies: Vec<Policy> = Vec::new();
        let mut expectations: Vec<Expectation> = Vec::new();

        let registry = SchemaRegistry::builtin();
        let fail = |line: usize, message: String| CliError::Scenario { line, message };

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (keyword, rest) = match line.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r.trim()),
                None => (line, ""),
            };
            match keyword {
                "name" => {
                    if rest.is_empty() {
                        return Err(fail(line_no, "empty scenario name".into()));
                    }
                    name = Some(rest.to_string());
                }
                "stipulate" => {
                    let tokens: Vec<&str> = rest.split_whitespace().collect();
                    let (n, kind, value) = match tokens.as_slice() {
                        [n, "->", kind, value] => (*n, *kind, *value),
                        _ => {
                            return Err(fail(
                                line_no,
                                "expected `stipulate <name> -> term <t>` or \
                                 `stipulate <name> -> obj <id>`"
                                    .into(),
                            ));
                        }
                    };
                    let referent = match kind {
                        "term" => Referent::TermRef(
                            Term::parse(value).map_err(|e| fail(line_no, e.to_string()))?,
                        ),
                        "obj" => {
                            lagado_core::validate_identifier(value)
                                .map_err(|e| fail(line_no, e.to_string()))?;
                            Referent::Opaque(value.to_string())
                        }
                        other => {
                            return Err(fail(
                                line_no,
                                format!(
                                    "stipulation target must be `term` or `obj`, got `{other}`"
                                ),
                            ));
                        }
                    };
                    lagado_core::validate_identifier(n)
                        .map_err(|e| fail(line_no, e.to_string()))?;
                    if stipulations.iter().any(|(seen, _)| seen == n) {
                        return Err(fail(
                            line_no,
                            format!("duplicate stipulation for name `{n}`"),
                        ));
                    }
                    stipulations.push((n.to_string(), referent));
                }
                "schema" => {
                    let id = SchemaId::new(rest);
                    registry
                        .get(&id)
                        .map_err(|e| fail(line_no, e.to_string()))?;
                    schema = Some(id);
                }
                "mode" => {
                    mode = Some(match rest {
                        "csi" => AdmissibilityMode::CsiOnly,
                        "all" => AdmissibilityMode::AllInstances,
                        other => {
                            return Err(fail(
                                line_no,
                                format!("mode must be `csi` or `all`, got `{other}`"),
                            ));
                        }
                    });
                }
                "universe" => {
                    let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    if names.is_empty() {
                        return Err(fail(line_no, "empty universe".into()));
                    }
                    universe = Some(names);
                }
                "depth" => {
                    depth = Some(
                        rest.parse::<usize>()
                            .map_err(|_| fail(line_no, format!("bad depth `{rest}`")))?,
                    );
                }
                "policy" => {
                    let policy: Policy = rest.parse().map_err(|e: String| fail(line_no, e))?;
                    policies.push(policy);
                }
                "expect" => {
                    expectations.push(parse_expectation(rest).map_err(|e| fail(line_no, e))?);
                }
                other => {
                    return Err(fail(line_no, format!("unknown directive `{other}`")));
                }
            }
        }

        let schema = schema.ok_or_else(|| fail(0, "missing `schema` line".into()))?;
        let mode = mode.ok_or_else(|| fail(0, "missing `mode` line".into()))?;
        let depth = depth.ok_or_else(|| fail(0, "missing `depth` line".into()))?;
        let universe =
            universe.unwrap_or_else(|| stipulations.iter().map(|(n, _)| n.clone()).collect());

        // Universe names must be distinct and stipulated.
        for (i, n) in universe.iter().enumerate() {
            if universe[..i].contains(n) {
                return Err(fail(0, format!("universe repeats name `{n}`")));
            }
            if !stipulations.iter().any(|(seen, _)| seen == n) {
                return Err(fail(0, format!("universe name `{n}` has no stipulation")));
            }
        }

        Ok(Scenario {
            name: name.unwrap_or_else(|| "scenario".to_string()),
            stipulations,
            schema,
            mode,
            universe,
            depth,
            policies,
            expectations,
        })
    }

    /// Load a scenario from a file.
    pub fn load(path: &Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path)?;
        Scenario::parse(&text)
    }

    /// Render back to the file format; `parse(render(s)) == s`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name {}", self.name);
        for (name, referent) in &self.stipulations {
            match referent {
                Referent::TermRef(t) => {
                    let _ = writeln!(out, "stipulate {name} -> term {t}");
                }
                Referent::Opaque(id) => {
                    let _ = writeln!(out, "stipulate {name} -> obj {id}");
                }
            }
        }
        let _ = writeln!(out, "schema {}", self.schema);
        let _ = writeln!(out, "mode {}", self.mode);
        let _ = writeln!(out, "universe {}", self.universe.join(" "));
        let _ = writeln!(out, "depth {}", self.depth);
        for policy in &self.policies {
            let _ = writeln!(out, "policy {policy}");
        }
        for expectation in &self.expectations {
            let _ = writeln!(out, "expect {expectation}");
        }
        out
    }

    /// Build the naming model the scenario describes.
    pub fn build_model(&self) -> lagado_core::Result<Model> {
        Model::build(self.stipulations.iter().cloned())
    }

    pub fn universe_refs(&self) -> Vec<&str> {
        self.universe.iter().map(String::as_str).collect()
    }
}

fn parse_expectation(rest: &str) -> Result<Expectation, String> {
    let (what, args) = match rest.split_once(char::is_whitespace) {
        Some((w, a)) => (w, a.trim()),
        None => (rest, ""),
    };
    match what {
        "verdict" => {
            let (spec_text, verdict_text) = args
                .rsplit_once(char::is_whitespace)
                .ok_or_else(|| "expected `expect verdict <instance> <verdict>`".to_string())?;
            let instance = InstanceSpec::parse(spec_text.trim())?;
            let expected = match verdict_text.trim() {
                "true" => VerdictExpectation::True,
                "false" => VerdictExpectation::False,
                "vacuous" => VerdictExpectation::Vacuous,
                other => return Err(format!("bad verdict `{other}`")),
            };
            Ok(Expectation::Verdict { instance, expected })
        }
        "conflict" => {
            let tokens: Vec<&str> = args.split_whitespace().collect();
            let [kind, positive, negative] = tokens.as_slice() else {
                return Err(
                    "expected `expect conflict <direct|leibniz> <positive> <negative>`".into(),
                );
            };
            let kind = match *kind {
                "direct" => ExpectedConflictKind::Direct,
                "leibniz" => ExpectedConflictKind::Leibniz,
                other => return Err(format!("bad conflict kind `{other}`")),
            };
            Ok(Expectation::Conflict {
                kind,
                positive: InstanceSpec::parse(positive)?,
                negative: InstanceSpec::parse(negative)?,
            })
        }
        "conflicts" => {
            let n = args
                .parse::<usize>()
                .map_err(|_| format!("bad conflict count `{args}`"))?;
            Ok(Expectation::ConflictCount(n))
        }
        "certificate" => {
            if args.is_empty() {
                Ok(Expectation::Certificate)
            } else {
                Err(format!(
                    "`expect certificate` takes no arguments, got `{args}`"
                ))
            }
        }
        other => Err(format!("unknown expectation `{other}`")),
    }
}
