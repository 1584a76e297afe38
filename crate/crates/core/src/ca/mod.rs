//! Constraint automata with memory, the built-in semantic sort.
//!
//! Atoms are transition lists such as
//! `empty -{a}, m' = a -> full; full -{b}, b = m -> empty;`. Composition is
//! the synchronous product, and [`trace::run`] drives a composed automaton
//! with an environment script.

mod atom;
mod automaton;
mod node;
mod product;
pub mod script;
mod sim;
pub mod trace;

use std::collections::BTreeSet;

pub use atom::from_atom;
pub use automaton::{Automaton, GuardTerm, PortRole, Transition};
pub use node::node;
pub use product::{product, product_all, DEFAULT_STATE_CAP};
pub use script::{parse_script, ScriptError, StepSpec};
pub use sim::{check_environment, enabled, step, Configuration, Fired, SimError, Solution};
pub use trace::{run, BoundaryEvent, RunError, StepRecord, Trace};

use crate::sorts::{AtomContext, IoMaps, SemanticSort, SortError, Substitution};
use crate::syntax::AtomAst;
use crate::values::Name;

#[derive(Clone, Copy, Debug)]
pub struct CaSort {
    /// Largest number of reachable states a product may have.
    pub state_cap: usize,
}

impl Default for CaSort {
    fn default() -> Self {
        CaSort {
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

impl SemanticSort for CaSort {
    type Component = Automaton;

    fn id(&self) -> &'static str {
        "ca"
    }

    fn trivial(&self) -> Automaton {
        Automaton::trivial()
    }

    fn compose(&self, a: &Automaton, b: &Automaton) -> Result<Automaton, SortError> {
        product(a, b, self.state_cap)
    }

    fn substitute_all(&self, c: &Automaton, map: &Substitution) -> Automaton {
        c.substitute(map)
    }

    fn support(&self, c: &Automaton) -> BTreeSet<Name> {
        c.support()
    }

    fn from_atoms(&self, atoms: &[AtomAst], ctx: &AtomContext) -> Result<Automaton, SortError> {
        let mut parts = Vec::new();
        for a in atoms {
            match a {
                AtomAst::Automaton(ca) => parts.push(from_atom(ca, ctx)?),
                AtomAst::Opaque(text) => {
                    return Err(SortError::Atom(format!(
                        "the ca sort cannot interpret the opaque atom \"{text}\"; use the opaque sort"
                    )))
                }
            }
        }
        product_all(&parts, self.state_cap)
    }

    fn describe(&self, c: &Automaton) -> serde_json::Value {
        c.to_json()
    }
}

impl IoMaps for CaSort {
    fn inputs(&self, c: &Automaton) -> BTreeSet<Name> {
        c.inputs()
    }

    fn outputs(&self, c: &Automaton) -> BTreeSet<Name> {
        c.outputs()
    }

    fn make_node(&self, inputs: &BTreeSet<Name>, outputs: &BTreeSet<Name>, default: &Name) -> Automaton {
        node(inputs, outputs, default)
    }
}
