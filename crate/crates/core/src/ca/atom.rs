use std::collections::{BTreeMap, BTreeSet};

use super::automaton::{Automaton, GuardTerm, PortRole, Transition};
use crate::sorts::{AtomContext, SortError};
use crate::syntax::{CaAtom, GuardTermAst, IoMarker};
use crate::values::Datum;

/// Builds the automaton of a transition-list atom.
///
/// Identifiers in guards that are declared ports read the port's datum and
/// must be in the sync set; all others are memory cells. Cells take their
/// initial values from the parameters in order of first appearance.
pub fn from_atom(atom: &CaAtom, ctx: &AtomContext) -> Result<Automaton, SortError> {
    let mut ports = BTreeMap::new();
    for (name, marker) in &ctx.ports {
        let role = match marker {
            Some(IoMarker::Input) => PortRole::In,
            Some(IoMarker::Output) => PortRole::Out,
            _ => return Err(SortError::MissingDirection(name.to_string())),
        };
        ports.insert(name.clone(), role);
    }
    let port_named = |s: &str| ports.keys().find(|p| p.to_string() == s).cloned();

    let mut states: Vec<String> = Vec::new();
    let state_index = |s: &str, states: &mut Vec<String>| {
        states.iter().position(|x| x == s).unwrap_or_else(|| {
            states.push(s.to_string());
            states.len() - 1
        })
    };
    if let Some(start) = &atom.start {
        state_index(start, &mut states);
    }

    let mut cells: Vec<String> = Vec::new();
    let mut written: BTreeSet<String> = BTreeSet::new();
    let mut transitions = Vec::new();
    for t in &atom.transitions {
        let source = state_index(&t.source, &mut states);
        let target = state_index(&t.target, &mut states);
        let mut sync = BTreeSet::new();
        for p in &t.sync {
            let port = port_named(p).ok_or_else(|| SortError::UndeclaredPort(p.clone()))?;
            sync.insert(port);
        }
        let mut term = |g: &GuardTermAst| -> Result<GuardTerm, SortError> {
            Ok(match g {
                GuardTermAst::Name(n) => match port_named(n) {
                    Some(p) if sync.contains(&p) => GuardTerm::Port(p),
                    Some(_) => {
                        return Err(SortError::Atom(format!(
                            "guard reads port `{n}` which is not in the sync set of `{} -> {}`",
                            t.source, t.target
                        )))
                    }
                    None => {
                        if !cells.contains(n) {
                            cells.push(n.clone());
                        }
                        GuardTerm::Cell(n.clone())
                    }
                },
                GuardTermAst::Primed(n) => {
                    if port_named(n).is_some() {
                        return Err(SortError::Atom(format!("port `{n}` cannot be primed")));
                    }
                    if !cells.contains(n) {
                        cells.push(n.clone());
                    }
                    written.insert(n.clone());
                    GuardTerm::Next(n.clone())
                }
                GuardTermAst::Int(i) => GuardTerm::Lit(Datum::Int(*i)),
                GuardTermAst::Text(s) => GuardTerm::Lit(Datum::Text(s.clone())),
                GuardTermAst::Bool(b) => GuardTerm::Lit(Datum::Bool(*b)),
            })
        };
        let mut guard = Vec::new();
        for (l, r) in &t.guard {
            guard.push((term(l)?, term(r)?));
        }
        transitions.push(Transition {
            source,
            sync,
            guard,
            target,
        });
    }
    if ctx.params.len() > cells.len() {
        return Err(SortError::Atom(format!(
            "{} parameter(s) given but the automaton has {} memory cell(s)",
            ctx.params.len(),
            cells.len()
        )));
    }
    let mut memory = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        let init = ctx.params.get(i).cloned();
        if init.is_none() && !written.contains(c) {
            return Err(SortError::UnknownCell(c.clone()));
        }
        memory.insert(c.clone(), init);
    }
    Ok(Automaton {
        states,
        initial: 0,
        ports,
        memory,
        transitions,
    })
}
