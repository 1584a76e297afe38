use std::collections::{BTreeMap, BTreeSet};

use super::automaton::{Automaton, GuardTerm, PortRole, Transition};
use crate::sorts::effective_node_ports;
use crate::values::Name;

/// Merge-replicate node: takes a datum from one input and copies it to every
/// output in the same step.
pub fn node(inputs: &BTreeSet<Name>, outputs: &BTreeSet<Name>, default: &Name) -> Automaton {
    let (inputs, outputs) = effective_node_ports(inputs, outputs, default);
    let mut ports = BTreeMap::new();
    for i in &inputs {
        ports.insert(i.clone(), PortRole::In);
    }
    for o in &outputs {
        ports.insert(o.clone(), PortRole::Out);
    }
    let transitions = inputs
        .iter()
        .map(|i| {
            let mut sync = outputs.clone();
            sync.insert(i.clone());
            let guard = outputs
                .iter()
                .map(|o| (GuardTerm::Port(o.clone()), GuardTerm::Port(i.clone())))
                .collect();
            Transition {
                source: 0,
                sync,
                guard,
                target: 0,
            }
        })
        .collect();
    Automaton {
        states: vec!["n".into()],
        initial: 0,
        ports,
        memory: BTreeMap::new(),
        transitions,
    }
}
