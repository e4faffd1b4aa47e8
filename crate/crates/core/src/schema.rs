//! Definition schemas and their substitution instances.
//!
//! A schema is an open biconditional with exactly the free variables `x` and
//! `y`; `S` is the bound description variable and is never substituted. An
//! instance fills the two slots with terms. Instances are structured
//! objects — schema id plus the two slot terms — and rendering to the
//! English layout is a projection, so "the first term" is a fact about the
//! structure, never about scanning text.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::term::Term;

/// Identifier of a registered schema.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchemaId(String);

impl SchemaId {
    pub fn new(id: impl Into<String>) -> SchemaId {
        SchemaId(id.into())
    }

    /// The built-in schema whose consequent subject is the x-slot term.
    pub fn lagadonian() -> SchemaId {
        SchemaId("lagadonian".into())
    }

    /// The built-in schema whose consequent subject is the fixed term `'a'`.
    pub fn laputan() -> SchemaId {
        SchemaId("laputan".into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for SchemaId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

/// How a schema picks the subject of its embedded consequent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubjectSelector {
    /// The consequent subject is the x-slot term itself.
    XSlot,
    /// The consequent subject is a fixed term, independent of the slots.
    ConstTerm(Term),
}

/// A definition schema: `x is <predicate> iff: <subject> is the first term in
/// S, if S is the coordinated substitution instance of (<symbol>) in which y
/// is the first term.`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaTemplate {
    pub id: SchemaId,
    /// Display name of the defined predicate, e.g. `Lagadonian`.
    pub predicate_name: String,
    /// Display symbol used when the schema names itself in the rendered
    /// sentence, e.g. `*`.
    pub symbol: String,
    pub subject_selector: SubjectSelector,
}

impl SchemaTemplate {
    pub fn new(
        id: SchemaId,
        predicate_name: impl Into<String>,
        symbol: impl Into<String>,
        subject_selector: SubjectSelector,
    ) -> SchemaTemplate {
        SchemaTemplate {
            id,
            predicate_name: predicate_name.into(),
            symbol: symbol.into(),
            subject_selector,
        }
    }

    pub fn lagadonian() -> SchemaTemplate {
        SchemaTemplate::new(
            SchemaId::lagadonian(),
            "Lagadonian",
            "*",
            SubjectSelector::XSlot,
        )
    }

    pub fn laputan() -> SchemaTemplate {
        let const_subject = Term::Atomic("a".into()).quoted();
        SchemaTemplate::new(
            SchemaId::laputan(),
            "Laputan",
            "\u{2020}",
            SubjectSelector::ConstTerm(const_subject),
        )
    }

    /// The term standing as subject of the embedded consequent for an
    /// instance whose x-slot holds `x_term`.
    pub fn consequent_subject(&self, x_term: &Term) -> Term {
        match &self.subject_selector {
            SubjectSelector::XSlot => x_term.clone(),
            SubjectSelector::ConstTerm(c) => c.clone(),
        }
    }

    /// For a `ConstTerm('n')` selector, the atomic name `n` the fixed subject
    /// quotes; the only term whose coordinated instance can come out true.
    pub fn designated_name(&self) -> Option<&str> {
        match &self.subject_selector {
            SubjectSelector::ConstTerm(Term::Quote(inner)) => match &**inner {
                Term::Atomic(name) => Some(name),
                Term::Quote(_) => None,
            },
            _ => None,
        }
    }
}

/// The registered schemas evaluation may refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaRegistry {
    templates: BTreeMap<SchemaId, SchemaTemplate>,
}

impl SchemaRegistry {
    /// Registry holding only the two built-in schemas.
    pub fn builtin() -> SchemaRegistry {
        let mut registry = SchemaRegistry {
            templates: BTreeMap::new(),
        };
        registry.register(SchemaTemplate::lagadonian()).unwrap();
        registry.register(SchemaTemplate::laputan()).unwrap();
        registry
    }

    pub fn register(&mut self, template: SchemaTemplate) -> Result<()> {
        if self.templates.contains_key(&template.id) {
            return Err(Error::DuplicateStipulation(template.id.to_string()));
        }
        self.templates.insert(template.id.clone(), template);
        Ok(())
    }

    pub fn get(&self, id: &SchemaId) -> Result<&SchemaTemplate> {
        self.templates
            .get(id)
            .ok_or_else(|| Error::UnknownSchema(id.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &SchemaId> {
        self.templates.keys()
    }
}

impl Default for SchemaRegistry {
    fn default() -> Self {
        SchemaRegistry::builtin()
    }
}

/// A substitution instance of a schema: both slots filled with terms.
///
/// Building an instance makes no admissibility judgment; whether it counts as
/// laying down a condition is the analyzer's business.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Instance {
    pub schema: SchemaId,
    pub x_term: Term,
    pub y_term: Term,
}

impl Instance {
    /// True iff the y-slot holds the quotation of the x-slot term
    /// (structural equality); the coordinated case.
    pub fn is_csi(&self) -> bool {
        self.y_term == self.x_term.quoted()
    }

    /// The x-slot term; it occupies the leftmost term position in every
    /// rendered instance.
    pub fn first_term(&self) -> &Term {
        &self.x_term
    }

    /// Compact functional notation, `CSI(a)` or `Phi(a, 'b')`.
    pub fn spec_string(&self) -> String {
        if self.is_csi() {
            format!("CSI({})", self.x_term)
        } else {
            format!("Phi({},{})", self.x_term, self.y_term)
        }
    }
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Instance", 5)?;
        s.serialize_field("schema", &self.schema)?;
        s.serialize_field("x", &self.x_term)?;
        s.serialize_field("y", &self.y_term)?;
        s.serialize_field("csi", &self.is_csi())?;
        s.serialize_field("spec", &self.spec_string())?;
        s.end()
    }
}

/// Build the instance of a registered schema with the given slot terms.
pub fn mk_instance(
    registry: &SchemaRegistry,
    schema: &SchemaId,
    x_term: Term,
    y_term: Term,
) -> Result<Instance> {
    registry.get(schema)?;
    Ok(Instance {
        schema: schema.clone(),
        x_term,
        y_term,
    })
}

/// Build the coordinated substitution instance for `alpha`: the y-slot holds
/// the quotation of the x-slot term.
pub fn mk_csi(registry: &SchemaRegistry, schema: &SchemaId, alpha: Term) -> Result<Instance> {
    let y_term = alpha.quoted();
    mk_instance(registry, schema, alpha, y_term)
}

/// Render an instance in the English sentence layout.
pub fn render_instance(registry: &SchemaRegistry, inst: &Instance) -> Result<String> {
    let template = registry.get(&inst.schema)?;
    let subject = template.consequent_subject(&inst.x_term);
    Ok(format!(
        "{x} is {pred} iff: {subject} is the first term in S, \
         if S is the coordinated substitution instance of ({symbol}) \
         in which {y} is the first term.",
        x = inst.x_term,
        pred = template.predicate_name,
        subject = subject,
        symbol = template.symbol,
        y = inst.y_term,
    ))
}

/// A sentence whose embedded description points at the containing sentence
/// itself ("this very substitution instance"). The denotation of that
/// description shifts with the subject, which is exactly what the fixed
/// schemas are built to avoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeicticInstance {
    pub subject: Term,
}

impl DeicticInstance {
    pub fn new(subject: Term) -> DeicticInstance {
        DeicticInstance { subject }
    }

    pub fn first_term(&self) -> &Term {
        &self.subject
    }

    pub fn render(&self) -> String {
        format!(
            "{} is the first term of this very substitution instance of (#).",
            self.subject
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(name: &str) -> Term {
        Term::atomic(name).unwrap()
    }

    #[test]
    fn csi_coordinates_the_slots() {
        let reg = SchemaRegistry::builtin();
        let lag = SchemaId::lagadonian();

        // Subject in the x-slot, its quotation in the y-slot.
        let csi = mk_csi(&reg, &lag, atom("d")).unwrap();
        assert_eq!(csi.x_term, atom("d"));
        assert_eq!(csi.y_term, atom("d").quoted());
        assert!(csi.is_csi());
        assert_eq!(csi.first_term(), &atom("d"));

        let quoted_csi = mk_csi(&reg, &lag, atom("a").quoted()).unwrap();
        assert_eq!(quoted_csi.y_term, atom("a").quoted().quoted());
        assert!(quoted_csi.is_csi());
    }

    #[test]
    fn uncoordinated_instances_are_not_csis() {
        let reg = SchemaRegistry::builtin();
        let lag = SchemaId::lagadonian();

        // Same term in both slots: coordination fails, the y-slot must hold
        // the quotation of the x-slot, not the x-slot itself.
        let inst = mk_instance(&reg, &lag, atom("d").quoted(), atom("d").quoted()).unwrap();
        assert!(!inst.is_csi());
        assert_eq!(inst.first_term(), &atom("d").quoted());

        let inst = mk_instance(&reg, &lag, atom("a"), atom("b").quoted()).unwrap();
        assert!(!inst.is_csi());

        let csi_shape =
            mk_instance(&reg, &lag, atom("d").quoted(), atom("d").quoted().quoted()).unwrap();
        assert!(csi_shape.is_csi());
    }

    #[test]
    fn unknown_schema_is_rejected() {
        let reg = SchemaRegistry::builtin();
        let missing = SchemaId::new("gulliverian");
        assert_eq!(
            mk_csi(&reg, &missing, atom("d")),
            Err(Error::UnknownSchema("gulliverian".into()))
        );
    }

    #[test]
    fn laputan_consequent_subject_is_fixed() {
        let reg = SchemaRegistry::builtin();
        let lap = SchemaId::laputan();
        let template = reg.get(&lap).unwrap();
        assert_eq!(template.consequent_subject(&atom("b")), atom("a").quoted());
        assert_eq!(template.designated_name(), Some("a"));

        let lag_template = reg.get(&SchemaId::lagadonian()).unwrap();
        assert_eq!(lag_template.consequent_subject(&atom("b")), atom("b"));
        assert_eq!(lag_template.designated_name(), None);
    }

    #[test]
    fn rendering_follows_the_sentence_layout() {
        let reg = SchemaRegistry::builtin();
        let csi_d = mk_csi(&reg, &SchemaId::lagadonian(), atom("d")).unwrap();
        assert_eq!(
            render_instance(&reg, &csi_d).unwrap(),
            "d is Lagadonian iff: d is the first term in S, if S is the \
             coordinated substitution instance of (*) in which 'd' is the \
             first term."
        );

        let csi_a = mk_csi(&reg, &SchemaId::laputan(), atom("a")).unwrap();
        assert_eq!(
            render_instance(&reg, &csi_a).unwrap(),
            "a is Laputan iff: 'a' is the first term in S, if S is the \
             coordinated substitution instance of (\u{2020}) in which 'a' is \
             the first term."
        );

        let inst = mk_instance(
            &reg,
            &SchemaId::lagadonian(),
            atom("a"),
            atom("a").quoted().quoted(),
        )
        .unwrap();
        let text = render_instance(&reg, &inst).unwrap();
        assert!(text.starts_with("a is Lagadonian iff: a is the first term"));
        assert!(text.contains("in which ''a'' is the first term."));
    }

    #[test]
    fn spec_string_uses_csi_sugar() {
        let reg = SchemaRegistry::builtin();
        let lag = SchemaId::lagadonian();
        let csi = mk_csi(&reg, &lag, atom("d").quoted()).unwrap();
        assert_eq!(csi.spec_string(), "CSI('d')");
        let inst = mk_instance(&reg, &lag, atom("d").quoted(), atom("d").quoted()).unwrap();
        assert_eq!(inst.spec_string(), "Phi('d','d')");
    }

    #[test]
    fn deictic_instance_puts_its_subject_first() {
        let inst = DeicticInstance::new(atom("d"));
        assert_eq!(inst.first_term(), &atom("d"));
        assert_eq!(
            inst.render(),
            "d is the first term of this very substitution instance of (#)."
        );
    }

    #[test]
    fn registry_rejects_duplicate_ids() {
        let mut reg = SchemaRegistry::builtin();
        assert!(reg.register(SchemaTemplate::lagadonian()).is_err());
        reg.register(SchemaTemplate::new(
            SchemaId::new("custom"),
            "Custom",
            "c",
            SubjectSelector::XSlot,
        ))
        .unwrap();
        assert!(reg.get(&SchemaId::new("custom")).is_ok());
    }
}
