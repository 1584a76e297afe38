use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::automaton::{Automaton, GuardTerm, PortRole, Transition};
use crate::sorts::SortError;
use crate::values::{Datum, Name};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Reachable part of the synchronous product `x ∧ y`.
///
/// Ports shared by both operands must be an input of one and an output of
/// the other; they become internal. A transition of one operand that touches
/// no shared port may fire alone or together with any such transition of the
/// other; transitions touching shared ports fire jointly when they agree on
/// the shared ports.
pub fn product(x: &Automaton, y: &Automaton, cap: usize) -> Result<Automaton, SortError> {
    if is_trivial(x) {
        return Ok(y.clone());
    }
    if is_trivial(y) {
        return Ok(x.clone());
    }
    let mut ports = x.ports.clone();
    let mut shared = BTreeSet::new();
    for (p, ry) in &y.ports {
        match (x.ports.get(p), ry) {
            (None, _) => {
                ports.insert(p.clone(), *ry);
            }
            (Some(PortRole::In), PortRole::Out) | (Some(PortRole::Out), PortRole::In) => {
                shared.insert(p.clone());
                ports.insert(p.clone(), PortRole::Internal);
            }
            (Some(rx), _) => {
                return Err(SortError::NotWellFormed(format!(
                    "port `{p}` is {} in one operand and {} in the other",
                    role_word(*rx),
                    role_word(*ry)
                )))
            }
        }
    }

    let (y, memory) = disjoint_memory(x, y);

    let touches = |t: &Transition| -> BTreeSet<Name> { t.sync.intersection(&shared).cloned().collect() };
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();
    let mut transitions = BTreeSet::new();
    let mut visit = |pair: (usize, usize), states: &mut Vec<String>, queue: &mut VecDeque<((usize, usize), usize)>| {
        *index.entry(pair).or_insert_with(|| {
            states.push(match (x.states.len(), y.states.len()) {
                (_, 1) => x.states[pair.0].clone(),
                (1, _) => y.states[pair.1].clone(),
                _ => format!("{}|{}", x.states[pair.0], y.states[pair.1]),
            });
            queue.push_back((pair, states.len() - 1));
            states.len() - 1
        })
    };
    let start = visit((x.initial, y.initial), &mut states, &mut queue);
    while let Some(((sx, sy), from)) = queue.pop_front() {
        if states.len() > cap {
            return Err(SortError::StateCap(cap));
        }
        let mut moves: Vec<((usize, usize), BTreeSet<Name>, Vec<(GuardTerm, GuardTerm)>)> = Vec::new();
        for t1 in x.outgoing(sx) {
            let s1 = touches(t1);
            if s1.is_empty() {
                moves.push(((t1.target, sy), t1.sync.clone(), t1.guard.clone()));
            }
            for t2 in y.outgoing(sy) {
                if s1 == touches(t2) {
                    let sync = t1.sync.union(&t2.sync).cloned().collect();
                    let guard = t1.guard.iter().chain(&t2.guard).cloned().collect();
                    moves.push(((t1.target, t2.target), sync, guard));
                }
            }
        }
        for t2 in y.outgoing(sy) {
            if touches(t2).is_empty() {
                moves.push(((sx, t2.target), t2.sync.clone(), t2.guard.clone()));
            }
        }
        for (pair, sync, guard) in moves {
            let target = visit(pair, &mut states, &mut queue);
            transitions.insert(Transition {
                source: from,
                sync,
                guard,
                target,
            });
        }
    }
    if states.len() > cap {
        return Err(SortError::StateCap(cap));
    }
    let mut transitions: Vec<_> = transitions.into_iter().collect();
    transitions.sort_by_key(|t| t.source);
    Ok(Automaton {
        states,
        initial: start,
        ports,
        memory,
        transitions,
    })
}

fn is_trivial(a: &Automaton) -> bool {
    a.states.len() == 1 && a.ports.is_empty() && a.memory.is_empty() && a.transitions.is_empty()
}

fn role_word(r: PortRole) -> &'static str {
    match r {
        PortRole::In => "an input",
        PortRole::Out => "an output",
        PortRole::Internal => "internal",
    }
}

/// Renames memory cells of `y` that collide with cells of `x` to `m#k` with
/// the least free `k`.
fn disjoint_memory(x: &Automaton, y: &Automaton) -> (Automaton, BTreeMap<String, Option<Datum>>) {
    let mut memory = x.memory.clone();
    let mut renaming = HashMap::new();
    for (c, init) in &y.memory {
        let mut name = c.clone();
        let mut k = 2;
        while memory.contains_key(&name) || (name != *c && y.memory.contains_key(&name)) {
            name = format!("{c}#{k}");
            k += 1;
        }
        memory.insert(name.clone(), init.clone());
        if name != *c {
            renaming.insert(c.clone(), name);
        }
    }
    if renaming.is_empty() {
        return (y.clone(), memory);
    }
    let cell = |t: &GuardTerm| match t {
        GuardTerm::Cell(c) => GuardTerm::Cell(renaming.get(c).cloned().unwrap_or_else(|| c.clone())),
        GuardTerm::Next(c) => GuardTerm::Next(renaming.get(c).cloned().unwrap_or_else(|| c.clone())),
        _ => t.clone(),
    };
    let mut y = y.clone();
    for t in &mut y.transitions {
        for (l, r) in &mut t.guard {
            *l = cell(l);
            *r = cell(r);
        }
    }
    (y, memory)
}

/// Product of many automata. Operands are folded in an order where each
/// next operand shares a port with those already folded, when possible,
/// which keeps intermediate products small.
pub fn product_all(parts: &[Automaton], cap: usize) -> Result<Automaton, SortError> {
    let mut remaining: Vec<&Automaton> = parts.iter().collect();
    if remaining.is_empty() {
        return Ok(Automaton::trivial());
    }
    let mut acc = remaining.remove(0).clone();
    while !remaining.is_empty() {
        let pick = remaining
            .iter()
            .position(|a| a.ports.keys().any(|p| acc.ports.contains_key(p)))
            .unwrap_or(0);
        let next = remaining.remove(pick);
        acc = product(&acc, next, cap)?;
    }
    Ok(acc)
}
