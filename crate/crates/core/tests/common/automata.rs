//! Random small constraint automata and an explicit boundary-trace oracle.
//!
//! Labels are the boundary ports of a step with their data, drawn from the
//! domain {0, 1}; data at internal ports is existentially quantified.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use treo::ca::{Automaton, GuardTerm, PortRole, Transition};
use treo::values::{Datum, Name};

pub type Label = BTreeMap<String, i64>;

const DOMAIN: [i64; 2] = [0, 1];

/// An automaton over the given ports with 1 or 2 states and up to three
/// memoryless transitions.
pub fn random_automaton<R: Rng>(rng: &mut R, ports: &[(Name, PortRole)]) -> Automaton {
    let n_states = rng.gen_range(1..=2);
    let names: Vec<Name> = ports.iter().map(|(p, _)| p.clone()).collect();
    let mut transitions = Vec::new();
    if !names.is_empty() {
        for _ in 0..rng.gen_range(1..=3) {
            let size = rng.gen_range(1..=names.len());
            let sync: BTreeSet<Name> = names.choose_multiple(rng, size).cloned().collect();
            let in_sync: Vec<Name> = sync.iter().cloned().collect();
            let mut guard = Vec::new();
            for _ in 0..rng.gen_range(0..=2) {
                let a = GuardTerm::Port(in_sync.choose(rng).unwrap().clone());
                let b = if rng.gen_bool(0.5) {
                    GuardTerm::Port(in_sync.choose(rng).unwrap().clone())
                } else {
                    GuardTerm::Lit(Datum::Int(*DOMAIN.choose(rng).unwrap()))
                };
                guard.push((a, b));
            }
            transitions.push(Transition {
                source: rng.gen_range(0..n_states),
                sync,
                guard,
                target: rng.gen_range(0..n_states),
            });
        }
    }
    Automaton {
        states: (0..n_states).map(|i| format!("s{i}")).collect(),
        initial: 0,
        ports: ports.iter().cloned().collect(),
        memory: BTreeMap::new(),
        transitions,
    }
}

/// Port lists for three automata where every name is shared by at most two
/// of them, as an input of one and an output of the other.
pub fn random_interfaces<R: Rng>(rng: &mut R) -> [Vec<(Name, PortRole)>; 3] {
    let mut out: [Vec<(Name, PortRole)>; 3] = Default::default();
    for n in 0..6 {
        let name = Name::new(format!("p{n}"));
        let role = if rng.gen_bool(0.5) { PortRole::In } else { PortRole::Out };
        let flip = if role == PortRole::In { PortRole::Out } else { PortRole::In };
        let mut owners = [0usize, 1, 2];
        owners.shuffle(rng);
        match rng.gen_range(0..3) {
            0 => {}
            1 => {
                if out[owners[0]].len() < 3 {
                    out[owners[0]].push((name, role));
                }
            }
            _ => {
                if out[owners[0]].len() < 3 && out[owners[1]].len() < 3 {
                    out[owners[0]].push((name.clone(), role));
                    out[owners[1]].push((name, flip));
                }
            }
        }
    }
    out
}

fn guard_holds(guard: &[(GuardTerm, GuardTerm)], env: &BTreeMap<&Name, i64>) -> bool {
    let val = |t: &GuardTerm| match t {
        GuardTerm::Port(p) => env.get(p).map(|v| Datum::Int(*v)),
        GuardTerm::Lit(d) => Some(d.clone()),
        _ => None,
    };
    guard.iter().all(|(l, r)| matches!((val(l), val(r)), (Some(x), Some(y)) if x == y))
}

/// Labelled steps from a state, by brute force over the data domain.
pub fn steps(a: &Automaton, state: usize) -> Vec<(Label, usize)> {
    let mut out = Vec::new();
    for t in a.transitions.iter().filter(|t| t.source == state) {
        let ports: Vec<&Name> = t.sync.iter().collect();
        let combos = DOMAIN.len().pow(ports.len() as u32);
        for c in 0..combos {
            let mut env = BTreeMap::new();
            let mut rest = c;
            for p in &ports {
                env.insert(*p, DOMAIN[rest % DOMAIN.len()]);
                rest /= DOMAIN.len();
            }
            if guard_holds(&t.guard, &env) {
                let label = env
                    .iter()
                    .filter(|(p, _)| matches!(a.ports.get(**p), Some(PortRole::In | PortRole::Out)))
                    .map(|(p, v)| (p.to_string(), *v))
                    .collect();
                out.push((label, t.target));
            }
        }
    }
    out
}

/// Whether `a` and `b` have the same boundary traces up to `depth` steps.
pub fn same_traces(a: &Automaton, b: &Automaton, depth: usize) -> bool {
    let mut seen = HashSet::new();
    go(a, b, BTreeSet::from([a.initial]), BTreeSet::from([b.initial]), depth, &mut seen)
}

fn successors(a: &Automaton, set: &BTreeSet<usize>) -> BTreeMap<Label, BTreeSet<usize>> {
    let mut out: BTreeMap<Label, BTreeSet<usize>> = BTreeMap::new();
    for s in set {
        for (l, t) in steps(a, *s) {
            out.entry(l).or_default().insert(t);
        }
    }
    out
}

fn go(
    a: &Automaton,
    b: &Automaton,
    sa: BTreeSet<usize>,
    sb: BTreeSet<usize>,
    depth: usize,
    seen: &mut HashSet<(BTreeSet<usize>, BTreeSet<usize>, usize)>,
) -> bool {
    if depth == 0 || !seen.insert((sa.clone(), sb.clone(), depth)) {
        return true;
    }
    let na = successors(a, &sa);
    let nb = successors(b, &sb);
    if na.keys().ne(nb.keys()) {
        return false;
    }
    na.into_iter()
        .zip(nb)
        .all(|((_, ta), (_, tb))| go(a, b, ta, tb, depth - 1, seen))
}

/// All boundary traces up to `depth` steps, for small automata.
pub fn traces(a: &Automaton, depth: usize) -> BTreeSet<Vec<Label>> {
    let mut out = BTreeSet::from([Vec::new()]);
    let mut frontier = vec![(Vec::new(), a.initial)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (trace, s) in frontier {
            for (l, t) in steps(a, s) {
                let mut tr: Vec<Label> = trace.clone();
                tr.push(l);
                out.insert(tr.clone());
                next.push((tr, t));
            }
        }
        frontier = next;
    }
    out
}
