//! A user-defined semantic sort. Components are data-flow graphs: a set of
//! edges from each input to each output of a primitive. The same Treo
//! program that compiles to constraint automata compiles to this sort, since
//! the sort only looks at the port markers of primitive definitions.
//!
//! cargo run --example custom_sort

use std::collections::BTreeSet;

use serde_json::json;
use treo::cli::{compile_with, CompileRequest};
use treo::sorts::{
    directed_ports, effective_node_ports, AtomContext, IoMaps, Replacement, SemanticSort, SortError,
    Substitution,
};
use treo::syntax::AtomAst;
use treo::values::Name;

#[derive(Clone, Debug, Default, PartialEq)]
struct Flow {
    inputs: BTreeSet<Name>,
    outputs: BTreeSet<Name>,
    edges: BTreeSet<(Name, Name)>,
}

struct FlowSort;

fn rename(n: &Name, map: &Substitution) -> Option<Name> {
    match map.get(n) {
        None => Some(n.clone()),
        Some(Replacement::Name(m)) => Some(m.clone()),
        Some(Replacement::Value(_)) => None,
    }
}

impl SemanticSort for FlowSort {
    type Component = Flow;

    fn id(&self) -> &'static str {
        "flow"
    }

    fn trivial(&self) -> Flow {
        Flow::default()
    }

    fn compose(&self, a: &Flow, b: &Flow) -> Result<Flow, SortError> {
        let mut c = a.clone();
        c.inputs.extend(b.inputs.iter().cloned());
        c.outputs.extend(b.outputs.iter().cloned());
        c.edges.extend(b.edges.iter().cloned());
        Ok(c)
    }

    fn substitute_all(&self, c: &Flow, map: &Substitution) -> Flow {
        let set = |s: &BTreeSet<Name>| s.iter().filter_map(|n| rename(n, map)).collect();
        Flow {
            inputs: set(&c.inputs),
            outputs: set(&c.outputs),
            edges: c
                .edges
                .iter()
                .filter_map(|(x, y)| Some((rename(x, map)?, rename(y, map)?)))
                .collect(),
        }
    }

    fn support(&self, c: &Flow) -> BTreeSet<Name> {
        c.inputs.union(&c.outputs).cloned().collect()
    }

    fn from_atoms(&self, _atoms: &[AtomAst], ctx: &AtomContext) -> Result<Flow, SortError> {
        let (inputs, outputs) = directed_ports(ctx)?;
        Ok(all_pairs(inputs, outputs))
    }

    fn describe(&self, c: &Flow) -> serde_json::Value {
        let edges: Vec<_> = c.edges.iter().map(|(x, y)| format!("{x} -> {y}")).collect();
        json!({ "edges": edges })
    }
}

impl IoMaps for FlowSort {
    fn inputs(&self, c: &Flow) -> BTreeSet<Name> {
        c.inputs.clone()
    }

    fn outputs(&self, c: &Flow) -> BTreeSet<Name> {
        c.outputs.clone()
    }

    fn make_node(&self, inputs: &BTreeSet<Name>, outputs: &BTreeSet<Name>, default: &Name) -> Flow {
        let (inputs, outputs) = effective_node_ports(inputs, outputs, default);
        all_pairs(inputs, outputs)
    }
}

fn all_pairs(inputs: BTreeSet<Name>, outputs: BTreeSet<Name>) -> Flow {
    let edges = inputs
        .iter()
        .flat_map(|i| outputs.iter().map(move |o| (i.clone(), o.clone())))
        .collect();
    Flow {
        inputs,
        outputs,
        edges,
    }
}

fn main() {
    let entry = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/alternator2.treo");
    let compiled = compile_with(FlowSort, &CompileRequest::new(entry)).unwrap_or_else(|e| panic!("{e}"));
    let whole = compiled.sort.flatten(&compiled.connector).expect("flow graphs always compose");
    println!("{} elements, {} edges", compiled.connector.len(), whole.edges.len());
    for (x, y) in &whole.edges {
        println!("  {x} -> {y}");
    }
}
