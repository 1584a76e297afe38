//! A sort that treats atoms as uninterpreted text, for example references
//! to external implementation files.

use std::collections::BTreeSet;

use serde_json::json;

use super::{
    effective_node_ports, substitute_names, AtomContext, IoMaps, SemanticSort, SortError,
    Substitution,
};
use crate::syntax::pretty::component_to_string;
use crate::syntax::{AtomAst, ComponentAst, IoMarker};
use crate::values::{Datum, Name};

#[derive(Clone, Debug, PartialEq)]
pub struct OpaqueComponent {
    pub atoms: Vec<String>,
    pub params: Vec<Datum>,
    pub inputs: BTreeSet<Name>,
    pub outputs: BTreeSet<Name>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct OpaqueSort;

/// Splits declared ports by marker; every port needs `?` or `!`.
pub fn directed_ports(
    ctx: &AtomContext,
) -> Result<(BTreeSet<Name>, BTreeSet<Name>), SortError> {
    let mut inputs = BTreeSet::new();
    let mut outputs = BTreeSet::new();
    for (name, marker) in &ctx.ports {
        match marker {
            Some(IoMarker::Input) => inputs.insert(name.clone()),
            Some(IoMarker::Output) => outputs.insert(name.clone()),
            _ => return Err(SortError::MissingDirection(name.to_string())),
        };
    }
    Ok((inputs, outputs))
}

impl SemanticSort for OpaqueSort {
    type Component = OpaqueComponent;

    fn id(&self) -> &'static str {
        "opaque"
    }

    fn trivial(&self) -> OpaqueComponent {
        OpaqueComponent {
            atoms: Vec::new(),
            params: Vec::new(),
            inputs: BTreeSet::new(),
            outputs: BTreeSet::new(),
        }
    }

    fn compose(&self, a: &OpaqueComponent, b: &OpaqueComponent) -> Result<OpaqueComponent, SortError> {
        let mut c = a.clone();
        c.atoms.extend(b.atoms.iter().cloned());
        c.params.extend(b.params.iter().cloned());
        c.inputs.extend(b.inputs.iter().cloned());
        c.outputs.extend(b.outputs.iter().cloned());
        Ok(c)
    }

    fn substitute_all(&self, c: &OpaqueComponent, map: &Substitution) -> OpaqueComponent {
        OpaqueComponent {
            atoms: c.atoms.clone(),
            params: c.params.clone(),
            inputs: substitute_names(&c.inputs, map),
            outputs: substitute_names(&c.outputs, map),
        }
    }

    fn support(&self, c: &OpaqueComponent) -> BTreeSet<Name> {
        c.inputs.union(&c.outputs).cloned().collect()
    }

    fn from_atoms(&self, atoms: &[AtomAst], ctx: &AtomContext) -> Result<OpaqueComponent, SortError> {
        let (inputs, outputs) = directed_ports(ctx)?;
        let atoms = atoms
            .iter()
            .map(|a| match a {
                AtomAst::Opaque(s) => s.clone(),
                AtomAst::Automaton(_) => {
                    let text = component_to_string(&ComponentAst::Atoms(vec![a.clone()]));
                    text.trim_start_matches("{ ").trim_end_matches('}').trim().to_string()
                }
            })
            .collect();
        Ok(OpaqueComponent {
            atoms,
            params: ctx.params.clone(),
            inputs,
            outputs,
        })
    }

    fn describe(&self, c: &OpaqueComponent) -> serde_json::Value {
        json!({ "atoms": c.atoms, "params": c.params })
    }
}

impl IoMaps for OpaqueSort {
    fn inputs(&self, c: &OpaqueComponent) -> BTreeSet<Name> {
        c.inputs.clone()
    }

    fn outputs(&self, c: &OpaqueComponent) -> BTreeSet<Name> {
        c.outputs.clone()
    }

    fn make_node(&self, inputs: &BTreeSet<Name>, outputs: &BTreeSet<Name>, default: &Name) -> OpaqueComponent {
        let (inputs, outputs) = effective_node_ports(inputs, outputs, default);
        OpaqueComponent {
            atoms: vec!["node".into()],
            params: Vec::new(),
            inputs,
            outputs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(ports: &[(&str, Option<IoMarker>)]) -> AtomContext {
        AtomContext {
            definition: "f".into(),
            ports: ports.iter().map(|(n, m)| (Name::new(*n), *m)).collect(),
            ..Default::default()
        }
    }

    #[test]
    fn ports_follow_markers() {
        let c = OpaqueSort
            .from_atoms(
                &[AtomAst::Opaque("MyFIFO1.java".into())],
                &ctx(&[("a", Some(IoMarker::Input)), ("b", Some(IoMarker::Output))]),
            )
            .unwrap();
        assert_eq!(c.inputs, BTreeSet::from([Name::new("a")]));
        assert_eq!(c.outputs, BTreeSet::from([Name::new("b")]));
        assert_eq!(c.atoms, vec!["MyFIFO1.java".to_string()]);
    }

    #[test]
    fn missing_marker_is_an_error() {
        let err = OpaqueSort
            .from_atoms(&[AtomAst::Opaque("x".into())], &ctx(&[("a", None)]))
            .unwrap_err();
        assert_eq!(err, SortError::MissingDirection("a".into()));
    }
}
