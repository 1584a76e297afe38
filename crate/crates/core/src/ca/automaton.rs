use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::sorts::{Replacement, Substitution};
use crate::values::{Datum, Name};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PortRole {
    In,
    Out,
    /// A port shared by two operands of a product. Not part of the support.
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GuardTerm {
    /// Datum flowing through a port.
    Port(Name),
    /// Value of a memory cell before the step.
    Cell(String),
    /// Value of a memory cell after the step.
    Next(String),
    Lit(Datum),
}

impl fmt::Display for GuardTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GuardTerm::Port(p) => write!(f, "{p}"),
            GuardTerm::Cell(c) => write!(f, "{c}"),
            GuardTerm::Next(c) => write!(f, "{c}'"),
            GuardTerm::Lit(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for GuardTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub source: usize,
    pub sync: BTreeSet<Name>,
    /// Conjunction of equalities; empty means `true`.
    pub guard: Vec<(GuardTerm, GuardTerm)>,
    pub target: usize,
}

/// A constraint automaton with memory.
#[derive(Clone, Debug, PartialEq)]
pub struct Automaton {
    pub states: Vec<String>,
    pub initial: usize,
    pub ports: BTreeMap<Name, PortRole>,
    /// Memory cells with their initial values. `None` is an empty cell.
    pub memory: BTreeMap<String, Option<Datum>>,
    pub transitions: Vec<Transition>,
}

impl Automaton {
    /// One state, no ports, no transitions.
    pub fn trivial() -> Self {
        Automaton {
            states: vec!["q".into()],
            initial: 0,
            ports: BTreeMap::new(),
            memory: BTreeMap::new(),
            transitions: Vec::new(),
        }
    }

    pub fn ports_with(&self, role: PortRole) -> BTreeSet<Name> {
        self.ports
            .iter()
            .filter(|(_, r)| **r == role)
            .map(|(p, _)| p.clone())
            .collect()
    }

    pub fn inputs(&self) -> BTreeSet<Name> {
        self.ports_with(PortRole::In)
    }

    pub fn outputs(&self) -> BTreeSet<Name> {
        self.ports_with(PortRole::Out)
    }

    /// Boundary ports.
    pub fn support(&self) -> BTreeSet<Name> {
        self.ports
            .iter()
            .filter(|(_, r)| **r != PortRole::Internal)
            .map(|(p, _)| p.clone())
            .collect()
    }

    pub fn outgoing(&self, state: usize) -> impl Iterator<Item = &Transition> {
        self.transitions.iter().filter(move |t| t.source == state)
    }

    /// Simultaneous substitution of ports. A port replaced by a value leaves
    /// the port set and the sync sets; guards read the value instead.
    pub fn substitute(&self, map: &Substitution) -> Automaton {
        let mut ports = BTreeMap::new();
        for (p, role) in &self.ports {
            match map.get(p) {
                None => {
                    ports.insert(p.clone(), *role);
                }
                Some(Replacement::Name(q)) => {
                    ports.insert(q.clone(), *role);
                }
                Some(Replacement::Value(_)) => {}
            }
        }
        let term = |t: &GuardTerm| match t {
            GuardTerm::Port(p) => match map.get(p) {
                Some(Replacement::Name(q)) => GuardTerm::Port(q.clone()),
                Some(Replacement::Value(v)) => GuardTerm::Lit(v.clone()),
                None => t.clone(),
            },
            _ => t.clone(),
        };
        let transitions = self
            .transitions
            .iter()
            .map(|t| Transition {
                source: t.source,
                sync: crate::sorts::substitute_names(&t.sync, map),
                guard: t.guard.iter().map(|(l, r)| (term(l), term(r))).collect(),
                target: t.target,
            })
            .collect();
        Automaton {
            states: self.states.clone(),
            initial: self.initial,
            ports,
            memory: self.memory.clone(),
            transitions,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let transitions: Vec<_> = self
            .transitions
            .iter()
            .map(|t| {
                let guard: Vec<_> = t.guard.iter().map(|(l, r)| format!("{l} = {r}")).collect();
                serde_json::json!({
                    "source": self.states[t.source],
                    "sync": t.sync,
                    "guard": guard,
                    "target": self.states[t.target],
                })
            })
            .collect();
        serde_json::json!({
            "states": self.states,
            "initial": self.states[self.initial],
            "ports": self.ports,
            "memory": self.memory,
            "transitions": transitions,
        })
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start {};", self.states[self.initial])?;
        for t in &self.transitions {
            let sync: Vec<_> = t.sync.iter().map(|p| p.to_string()).collect();
            write!(f, "{} -{{{}}}", self.states[t.source], sync.join(","))?;
            if t.guard.is_empty() {
                write!(f, ", true")?;
            }
            for (l, r) in &t.guard {
                write!(f, ", {l} = {r}")?;
            }
            writeln!(f, " -> {};", self.states[t.target])?;
        }
        Ok(())
    }
}
