//! Semantic sorts: the algebra primitive behaviour is expressed in.
//!
//! A sort supplies components, a composition operator, simultaneous
//! substitution of names by names or values, a trivial unit and the support
//! of a component. [`IoSort`] wraps any sort that also knows the input and
//! output names of its components and delays composition so that surgery can
//! insert node components afterwards.

mod io;
mod opaque;
mod surgery;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use thiserror::Error;

use crate::syntax::{AtomAst, IoMarker, Span};
use crate::values::{Datum, Name};

pub use io::{ElementKind, IoComposite, IoPrimitive, IoSort};
pub use opaque::{directed_ports, OpaqueComponent, OpaqueSort};
pub use surgery::{check_well_formed, optimize_nodes, surgery, surgery_with_boundary, Violation};

/// What a name is replaced by in a substitution `C[y/x]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Replacement {
    Name(Name),
    Value(Datum),
}

pub type Substitution = BTreeMap<Name, Replacement>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SortError {
    #[error("port `{0}` is not declared in the interface")]
    UndeclaredPort(String),
    #[error("port `{0}` of a primitive needs an input (?) or output (!) marker")]
    MissingDirection(String),
    #[error("memory cell `{0}` is not known")]
    UnknownCell(String),
    #[error("composition is not well-formed: {0}")]
    NotWellFormed(String),
    #[error("product exceeds the state cap of {0} states")]
    StateCap(usize),
    #[error("{0}")]
    Atom(String),
}

/// Information about the primitive definition whose body holds an atom.
#[derive(Clone, Debug, Default)]
pub struct AtomContext {
    pub definition: String,
    /// Flattened interface names with their markers.
    pub ports: Vec<(Name, Option<IoMarker>)>,
    /// Flattened parameter values.
    pub params: Vec<Datum>,
    pub span: Option<Span>,
}

pub trait SemanticSort {
    type Component: Clone + PartialEq + Debug;

    fn id(&self) -> &'static str;

    /// The unit of composition, with empty support.
    fn trivial(&self) -> Self::Component;

    fn compose(
        &self,
        a: &Self::Component,
        b: &Self::Component,
    ) -> Result<Self::Component, SortError>;

    /// Simultaneous substitution. Names outside the map are unchanged.
    fn substitute_all(&self, c: &Self::Component, map: &Substitution) -> Self::Component;

    /// `C[y/x]`.
    fn substitute(&self, c: &Self::Component, y: &Replacement, x: &Name) -> Self::Component {
        let map = BTreeMap::from([(x.clone(), y.clone())]);
        self.substitute_all(c, &map)
    }

    fn support(&self, c: &Self::Component) -> BTreeSet<Name>;

    /// Semantics of the atoms in a primitive definition's body.
    fn from_atoms(&self, atoms: &[AtomAst], ctx: &AtomContext)
        -> Result<Self::Component, SortError>;

    /// Serializable view of a component.
    fn describe(&self, c: &Self::Component) -> serde_json::Value;
}

/// A sort whose components have input and output names and which can build
/// the merge-replicate node components used by surgery.
pub trait IoMaps: SemanticSort {
    fn inputs(&self, c: &Self::Component) -> BTreeSet<Name>;

    fn outputs(&self, c: &Self::Component) -> BTreeSet<Name>;

    /// `node(I, O, x)`. Uses `{x}` in place of an empty `I` or `O`.
    fn make_node(
        &self,
        inputs: &BTreeSet<Name>,
        outputs: &BTreeSet<Name>,
        default: &Name,
    ) -> Self::Component;
}

/// `node`'s port sets after the default-name rule.
pub fn effective_node_ports(
    inputs: &BTreeSet<Name>,
    outputs: &BTreeSet<Name>,
    default: &Name,
) -> (BTreeSet<Name>, BTreeSet<Name>) {
    let fill = |s: &BTreeSet<Name>| {
        if s.is_empty() {
            BTreeSet::from([default.clone()])
        } else {
            s.clone()
        }
    };
    (fill(inputs), fill(outputs))
}

/// Applies a substitution to a name set: renamed names are renamed, names
/// replaced by values disappear.
pub fn substitute_names(names: &BTreeSet<Name>, map: &Substitution) -> BTreeSet<Name> {
    names
        .iter()
        .filter_map(|n| match map.get(n) {
            None => Some(n.clone()),
            Some(Replacement::Name(m)) => Some(m.clone()),
            Some(Replacement::Value(_)) => None,
        })
        .collect()
}
