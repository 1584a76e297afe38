use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use thiserror::Error;

use super::automaton::{Automaton, GuardTerm, PortRole, Transition};
use crate::values::{Datum, Name};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("`{0}` is not a boundary input; data can only be offered at inputs")]
    NotAnInput(String),
    #[error("`{0}` is not a boundary output; only outputs can be ready")]
    NotAnOutput(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fired {
    pub transition: usize,
    pub from: usize,
    pub to: usize,
    pub sync: BTreeSet<Name>,
    /// Datum seen at each port of the sync set. `None` when the guards do
    /// not determine one, as for channels that move tokens only.
    pub data: BTreeMap<Name, Option<Datum>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub state: usize,
    pub memory: BTreeMap<String, Option<Datum>>,
    pub log: Vec<Fired>,
}

impl Configuration {
    pub fn initial(a: &Automaton) -> Self {
        Configuration {
            state: a.initial,
            memory: a.memory.clone(),
            log: Vec::new(),
        }
    }
}

/// Equality classes over guard terms, each with at most one constant.
struct Classes {
    index: HashMap<GuardTerm, usize>,
    parent: Vec<usize>,
    value: Vec<Option<Datum>>,
}

impl Classes {
    fn new() -> Self {
        Classes {
            index: HashMap::new(),
            parent: Vec::new(),
            value: Vec::new(),
        }
    }

    fn node(&mut self, t: &GuardTerm) -> usize {
        if let Some(i) = self.index.get(t) {
            return *i;
        }
        let i = self.parent.len();
        self.parent.push(i);
        self.value.push(match t {
            GuardTerm::Lit(d) => Some(d.clone()),
            _ => None,
        });
        self.index.insert(t.clone(), i);
        i
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Pins a term to a value. False on conflict.
    fn pin(&mut self, t: &GuardTerm, d: &Datum) -> bool {
        let i = self.node(t);
        let r = self.find(i);
        match &self.value[r] {
            Some(v) => v == d,
            None => {
                self.value[r] = Some(d.clone());
                true
            }
        }
    }

    fn union(&mut self, a: &GuardTerm, b: &GuardTerm) -> bool {
        let (i, j) = (self.node(a), self.node(b));
        let (ri, rj) = (self.find(i), self.find(j));
        if ri == rj {
            return true;
        }
        let merged = match (self.value[ri].take(), self.value[rj].take()) {
            (Some(x), Some(y)) if x != y => return false,
            (Some(x), _) | (_, Some(x)) => Some(x),
            (None, None) => None,
        };
        self.parent[ri] = rj;
        self.value[rj] = merged;
        true
    }

    fn get(&mut self, t: &GuardTerm) -> Option<Datum> {
        let i = *self.index.get(t)?;
        let r = self.find(i);
        self.value[r].clone()
    }
}

/// A solved enabled transition: data at its ports and next memory values.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub transition: usize,
    pub data: BTreeMap<Name, Option<Datum>>,
    pub memory: BTreeMap<String, Option<Datum>>,
}

fn solve(
    config: &Configuration,
    index: usize,
    t: &Transition,
    offers: &BTreeMap<Name, Datum>,
) -> Option<Solution> {
    let mut classes = Classes::new();
    for p in &t.sync {
        if let Some(d) = offers.get(p) {
            if !classes.pin(&GuardTerm::Port(p.clone()), d) {
                return None;
            }
        }
    }
    for (c, v) in &config.memory {
        if let Some(d) = v {
            if !classes.pin(&GuardTerm::Cell(c.clone()), d) {
                return None;
            }
        }
    }
    for (l, r) in &t.guard {
        if !classes.union(l, r) {
            return None;
        }
    }
    let data = t
        .sync
        .iter()
        .map(|p| (p.clone(), classes.get(&GuardTerm::Port(p.clone()))))
        .collect();
    let mut memory = config.memory.clone();
    for (c, v) in memory.iter_mut() {
        let next = GuardTerm::Next(c.clone());
        if classes.index.contains_key(&next) {
            *v = classes.get(&next);
        }
    }
    Some(Solution {
        transition: index,
        data,
        memory,
    })
}

/// Checks that offers are made at boundary inputs and readiness at boundary
/// outputs.
pub fn check_environment(
    a: &Automaton,
    offers: &BTreeMap<Name, Datum>,
    ready: &BTreeSet<Name>,
) -> Result<(), SimError> {
    for p in offers.keys() {
        if a.ports.get(p) != Some(&PortRole::In) {
            return Err(SimError::NotAnInput(p.to_string()));
        }
    }
    for p in ready {
        if a.ports.get(p) != Some(&PortRole::Out) {
            return Err(SimError::NotAnOutput(p.to_string()));
        }
    }
    Ok(())
}

/// Transitions from the current state that the environment allows and whose
/// guards are satisfiable.
pub fn enabled(
    a: &Automaton,
    config: &Configuration,
    offers: &BTreeMap<Name, Datum>,
    ready: &BTreeSet<Name>,
) -> Vec<Solution> {
    a.transitions
        .iter()
        .enumerate()
        .filter(|(_, t)| t.source == config.state)
        .filter(|(_, t)| {
            t.sync.iter().all(|p| match a.ports.get(p) {
                Some(PortRole::In) => offers.contains_key(p),
                Some(PortRole::Out) => ready.contains(p),
                _ => true,
            })
        })
        .filter_map(|(i, t)| solve(config, i, t, offers))
        .collect()
}

/// Fires one enabled transition, chosen uniformly. Returns `None` and leaves
/// the configuration unchanged when nothing is enabled.
pub fn step<R: Rng>(
    a: &Automaton,
    config: &mut Configuration,
    offers: &BTreeMap<Name, Datum>,
    ready: &BTreeSet<Name>,
    rng: &mut R,
) -> Result<Option<Fired>, SimError> {
    check_environment(a, offers, ready)?;
    let mut options = enabled(a, config, offers, ready);
    if options.is_empty() {
        return Ok(None);
    }
    let pick = if options.len() == 1 {
        0
    } else {
        rng.gen_range(0..options.len())
    };
    let s = options.swap_remove(pick);
    let t = &a.transitions[s.transition];
    let fired = Fired {
        transition: s.transition,
        from: t.source,
        to: t.target,
        sync: t.sync.clone(),
        data: s.data,
    };
    config.state = t.target;
    config.memory = s.memory;
    config.log.push(fired.clone());
    Ok(Some(fired))
}
