//! Scopes: finite maps from names to value arrays.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use super::{Name, Ragged, Value};

pub type Binding<C> = Ragged<Value<C>>;

/// Persistent scope. Updates return a new scope and leave the old one intact.
pub struct Scope<C> {
    map: Rc<BTreeMap<Name, Binding<C>>>,
}

impl<C> Clone for Scope<C> {
    fn clone(&self) -> Self {
        Scope {
            map: self.map.clone(),
        }
    }
}

impl<C> Default for Scope<C> {
    fn default() -> Self {
        Scope {
            map: Rc::new(BTreeMap::new()),
        }
    }
}

impl<C> fmt::Debug for Scope<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k} ↦ {v}")?;
        }
        f.write_str("}")
    }
}

impl<C: PartialEq> PartialEq for Scope<C> {
    fn eq(&self, other: &Self) -> bool {
        Rc::ptr_eq(&self.map, &other.map) || self.map == other.map
    }
}

impl<C> Scope<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(name: Name, value: Binding<C>) -> Self {
        Self::new().with(name, value)
    }

    pub fn get(&self, name: &Name) -> Option<&Binding<C>> {
        self.map.get(name)
    }

    pub fn contains(&self, name: &Name) -> bool {
        self.map.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Binding<C>)> {
        self.map.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &Name> {
        self.map.keys()
    }

    /// `σ{x ↦ d}`.
    pub fn with(&self, name: Name, value: Binding<C>) -> Self {
        let mut map = (*self.map).clone();
        map.insert(name, value);
        Scope { map: Rc::new(map) }
    }

    /// `σσ'`: the domain is the union and `inner` wins on overlap.
    pub fn compose(&self, inner: &Scope<C>) -> Self {
        if inner.is_empty() {
            return self.clone();
        }
        if self.is_empty() {
            return inner.clone();
        }
        let mut map = (*self.map).clone();
        for (k, v) in inner.map.iter() {
            map.insert(k.clone(), v.clone());
        }
        Scope { map: Rc::new(map) }
    }
}

impl<C> FromIterator<(Name, Binding<C>)> for Scope<C> {
    fn from_iter<I: IntoIterator<Item = (Name, Binding<C>)>>(iter: I) -> Self {
        Scope {
            map: Rc::new(iter.into_iter().collect()),
        }
    }
}
