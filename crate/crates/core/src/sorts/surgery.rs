//! Well-formedness, surgery and the optional node-collapsing pass.

use std::collections::{BTreeMap, BTreeSet};

use super::{effective_node_ports, ElementKind, IoComposite, IoMaps, IoPrimitive, IoSort, Replacement};
use crate::values::Name;

/// A name used as input or output by more than one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub name: Name,
    pub in_degree: usize,
    pub out_degree: usize,
}

/// Empty when every name is an input of at most one element and an output
/// of at most one element.
pub fn check_well_formed<C>(p: &IoComposite<C>) -> Vec<Violation> {
    let mut degrees: BTreeMap<&Name, (usize, usize)> = BTreeMap::new();
    for e in &p.elements {
        for n in &e.inputs {
            degrees.entry(n).or_default().0 += 1;
        }
        for n in &e.outputs {
            degrees.entry(n).or_default().1 += 1;
        }
    }
    degrees
        .into_iter()
        .filter(|(_, (i, o))| *i > 1 || *o > 1)
        .map(|(n, (i, o))| Violation {
            name: n.clone(),
            in_degree: i,
            out_degree: o,
        })
        .collect()
}

/// `surg(P1 ⋯ Pn)`: renames `x` to `x@i` inside the `i`-th element and
/// appends one node component per support name, in order of first
/// appearance.
pub fn surgery<S: IoMaps>(sort: &IoSort<S>, p: &IoComposite<S::Component>) -> IoComposite<S::Component> {
    surgery_with_boundary(sort, p, &BTreeSet::new())
}

/// Surgery that keeps every name in `boundary` reachable from outside even
/// when it is also used internally on both sides: such a node gains the
/// plain name as an extra input and its alias as an extra output.
pub fn surgery_with_boundary<S: IoMaps>(
    sort: &IoSort<S>,
    p: &IoComposite<S::Component>,
    boundary: &BTreeSet<Name>,
) -> IoComposite<S::Component> {
    let mut elements = Vec::with_capacity(p.len() + p.support().len());
    let mut node_in: BTreeMap<Name, BTreeSet<Name>> = BTreeMap::new();
    let mut node_out: BTreeMap<Name, BTreeSet<Name>> = BTreeMap::new();
    for (idx, e) in p.elements.iter().enumerate() {
        let i = idx + 1;
        let map = e
            .support()
            .into_iter()
            .map(|x| {
                let split = x.split(i);
                (x, Replacement::Name(split))
            })
            .collect();
        for x in &e.outputs {
            node_in.entry(x.clone()).or_default().insert(x.split(i));
        }
        for x in &e.inputs {
            node_out.entry(x.clone()).or_default().insert(x.split(i));
        }
        elements.push(sort.substitute_element(e, &map));
    }
    for x in p.names_in_order() {
        let mut ins = node_in.remove(&x).unwrap_or_default();
        let mut outs = node_out.remove(&x).unwrap_or_default();
        if boundary.contains(&x) && !ins.is_empty() && !outs.is_empty() {
            ins.insert(x.clone());
            outs.insert(x.alias());
        }
        let inner = sort.inner.make_node(&ins, &outs, &x);
        let (inputs, outputs) = effective_node_ports(&ins, &outs, &x);
        elements.push(IoPrimitive {
            inner,
            inputs,
            outputs,
            kind: ElementKind::Node { default: x },
        });
    }
    IoComposite { elements }
}

/// Removes node components with one input and one output that both connect
/// to other elements, joining the two names.
pub fn optimize_nodes<S: IoMaps>(sort: &IoSort<S>, p: &IoComposite<S::Component>) -> IoComposite<S::Component> {
    let mut renames: BTreeMap<Name, Name> = BTreeMap::new();
    let mut kept = Vec::new();
    for e in &p.elements {
        let collapsible = e.is_node()
            && e.inputs.len() == 1
            && e.outputs.len() == 1
            && e.inputs.iter().chain(&e.outputs).all(Name::is_split);
        if collapsible {
            let from = e.outputs.iter().next().unwrap().clone();
            let to = e.inputs.iter().next().unwrap().clone();
            renames.insert(from, to);
        } else {
            kept.push(e);
        }
    }
    let map = renames
        .into_iter()
        .map(|(k, v)| (k, Replacement::Name(v)))
        .collect();
    IoComposite {
        elements: kept
            .into_iter()
            .map(|e| sort.substitute_element(e, &map))
            .collect(),
    }
}
