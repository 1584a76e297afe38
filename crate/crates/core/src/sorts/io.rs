//! I/O-components: sequences of primitives tagged with input and output
//! names. Composition is concatenation.

use std::collections::BTreeSet;

use serde_json::json;

use super::{
    substitute_names, AtomContext, IoMaps, SemanticSort, SortError, Substitution,
};
use crate::syntax::{AtomAst, Span};
use crate::values::Name;

#[derive(Clone, Debug, PartialEq)]
pub enum ElementKind {
    /// Instance of a primitive definition.
    Primitive {
        definition: String,
        span: Option<Span>,
    },
    /// Node component inserted by surgery for the given name.
    Node { default: Name },
}

/// `(C, I, O)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IoPrimitive<C> {
    pub inner: C,
    pub inputs: BTreeSet<Name>,
    pub outputs: BTreeSet<Name>,
    pub kind: ElementKind,
}

impl<C> IoPrimitive<C> {
    pub fn support(&self) -> BTreeSet<Name> {
        self.inputs.union(&self.outputs).cloned().collect()
    }

    pub fn is_node(&self) -> bool {
        matches!(self.kind, ElementKind::Node { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IoComposite<C> {
    pub elements: Vec<IoPrimitive<C>>,
}

impl<C> Default for IoComposite<C> {
    fn default() -> Self {
        IoComposite {
            elements: Vec::new(),
        }
    }
}

impl<C> IoComposite<C> {
    pub fn single(p: IoPrimitive<C>) -> Self {
        IoComposite { elements: vec![p] }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn support(&self) -> BTreeSet<Name> {
        self.elements.iter().flat_map(|e| e.support()).collect()
    }

    /// Support names in order of first appearance.
    pub fn names_in_order(&self) -> Vec<Name> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in &self.elements {
            for n in e.inputs.iter().chain(&e.outputs) {
                if seen.insert(n.clone()) {
                    out.push(n.clone());
                }
            }
        }
        out
    }

    pub fn primitive_count(&self) -> usize {
        self.elements.iter().filter(|e| !e.is_node()).count()
    }
}

/// The sort of I/O-components over an underlying sort.
#[derive(Clone, Debug, Default)]
pub struct IoSort<S> {
    pub inner: S,
}

impl<S: IoMaps> IoSort<S> {
    pub fn new(inner: S) -> Self {
        IoSort { inner }
    }

    /// `(C, I(C), O(C))`.
    pub fn wrap(&self, c: S::Component, kind: ElementKind) -> IoPrimitive<S::Component> {
        IoPrimitive {
            inputs: self.inner.inputs(&c),
            outputs: self.inner.outputs(&c),
            inner: c,
            kind,
        }
    }

    pub fn substitute_element(
        &self,
        e: &IoPrimitive<S::Component>,
        map: &Substitution,
    ) -> IoPrimitive<S::Component> {
        IoPrimitive {
            inner: self.inner.substitute_all(&e.inner, map),
            inputs: substitute_names(&e.inputs, map),
            outputs: substitute_names(&e.outputs, map),
            kind: e.kind.clone(),
        }
    }

    /// Composes the underlying components of all elements in order.
    pub fn flatten(&self, c: &IoComposite<S::Component>) -> Result<S::Component, SortError> {
        let mut acc = self.inner.trivial();
        for e in &c.elements {
            acc = self.inner.compose(&acc, &e.inner)?;
        }
        Ok(acc)
    }

    pub fn describe_element(&self, e: &IoPrimitive<S::Component>) -> serde_json::Value {
        let (kind, origin) = match &e.kind {
            ElementKind::Primitive { definition, span } => (
                "primitive",
                json!({
                    "definition": definition,
                    "span": span.map(|s| s.to_string()),
                }),
            ),
            ElementKind::Node { default } => ("node", json!({ "synthesized": default })),
        };
        let mut ports = serde_json::Map::new();
        for n in &e.inputs {
            ports.insert(n.to_string(), json!("input"));
        }
        for n in &e.outputs {
            let role = if e.inputs.contains(n) { "mixed" } else { "output" };
            ports.insert(n.to_string(), json!(role));
        }
        json!({
            "kind": kind,
            "origin": origin,
            "ports": ports,
            "payload": self.inner.describe(&e.inner),
        })
    }
}

impl<S: IoMaps> SemanticSort for IoSort<S> {
    type Component = IoComposite<S::Component>;

    fn id(&self) -> &'static str {
        self.inner.id()
    }

    fn trivial(&self) -> Self::Component {
        IoComposite::default()
    }

    fn compose(&self, a: &Self::Component, b: &Self::Component) -> Result<Self::Component, SortError> {
        let mut elements = a.elements.clone();
        elements.extend(b.elements.iter().cloned());
        Ok(IoComposite { elements })
    }

    fn substitute_all(&self, c: &Self::Component, map: &Substitution) -> Self::Component {
        IoComposite {
            elements: c
                .elements
                .iter()
                .map(|e| self.substitute_element(e, map))
                .collect(),
        }
    }

    fn support(&self, c: &Self::Component) -> BTreeSet<Name> {
        c.support()
    }

    fn from_atoms(&self, atoms: &[AtomAst], ctx: &AtomContext) -> Result<Self::Component, SortError> {
        let c = self.inner.from_atoms(atoms, ctx)?;
        Ok(IoComposite::single(self.wrap(
            c,
            ElementKind::Primitive {
                definition: ctx.definition.clone(),
                span: ctx.span,
            },
        )))
    }

    fn describe(&self, c: &Self::Component) -> serde_json::Value {
        serde_json::Value::Array(c.elements.iter().map(|e| self.describe_element(e)).collect())
    }
}

impl<S: IoMaps> IoSort<S> {
    pub fn inputs_of(&self, c: &IoComposite<S::Component>) -> BTreeSet<Name> {
        c.elements.iter().flat_map(|e| e.inputs.iter().cloned()).collect()
    }

    pub fn outputs_of(&self, c: &IoComposite<S::Component>) -> BTreeSet<Name> {
        c.elements.iter().flat_map(|e| e.outputs.iter().cloned()).collect()
    }
}
