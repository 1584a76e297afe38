use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::json;

use super::{CompileRequest, Compiled};
use crate::sorts::{ElementKind, IoMaps};
use crate::values::Name;

pub const SCHEMA: u32 = 1;

fn direction<S: IoMaps>(c: &Compiled<S>, name: &Name) -> &'static str {
    let input = c.connector.elements.iter().any(|e| e.inputs.contains(name));
    let output = c.connector.elements.iter().any(|e| e.outputs.contains(name));
    match (input, output) {
        (true, true) => "mixed",
        (true, false) => "input",
        (false, true) => "output",
        (false, false) => "unused",
    }
}

pub fn to_json<S: IoMaps>(c: &Compiled<S>, req: &CompileRequest) -> serde_json::Value {
    let interface: Vec<_> = c
        .boundary
        .iter()
        .map(|n| json!({ "name": n, "direction": direction(c, n) }))
        .collect();
    let elements: Vec<_> = c
        .connector
        .elements
        .iter()
        .map(|e| c.sort.describe_element(e))
        .collect();
    json!({
        "schema": SCHEMA,
        "main": c.main,
        "interface": interface,
        "elements": elements,
        "metadata": {
            "tool": "treo",
            "version": env!("CARGO_PKG_VERSION"),
            "sort": c.sort.inner.id(),
            "seed": req.seed,
            "flags": {
                "strict_no_recursion": req.strict_no_recursion,
                "optimize_nodes": req.optimize_nodes,
                "recursion_depth": req.recursion_depth,
            },
        },
    })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Bipartite graph: primitives are boxes, nodes are circles, and each name
/// is an edge from the element that outputs it to the element that takes it
/// as input.
pub fn to_dot<S: IoMaps>(c: &Compiled<S>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(&c.main)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    let mut producer: BTreeMap<&Name, usize> = BTreeMap::new();
    let mut consumer: BTreeMap<&Name, usize> = BTreeMap::new();
    for (i, e) in c.connector.elements.iter().enumerate() {
        let id = i + 1;
        let attrs = match &e.kind {
            ElementKind::Primitive { definition, .. } => {
                format!("shape=box, label={}", quote(definition))
            }
            ElementKind::Node { default } => {
                let bold = if c.boundary.contains(default) { ", style=bold" } else { "" };
                format!("shape=circle, label={}{bold}", quote(&default.to_string()))
            }
        };
        writeln!(out, "  e{id} [{attrs}];").unwrap();
        for n in &e.outputs {
            producer.insert(n, id);
        }
        for n in &e.inputs {
            consumer.insert(n, id);
        }
    }
    for (name, from) in &producer {
        if let Some(to) = consumer.get(name) {
            writeln!(out, "  e{from} -> e{to} [label={}];", quote(&name.to_string())).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
