//! Names: identifiers closed under natural-number subscripts.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

/// A node or variable name.
///
/// `a[1][2]` is base `a` with subscripts `[1, 2]`. Fresh names have a base
/// starting with `$`, which no source identifier can produce. Surgery adds
/// a split index (`x@2`) and, for mixed boundary nodes, an output alias.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name {
    pub base: String,
    pub subs: Vec<u64>,
    pub split: Option<usize>,
    pub alias: bool,
}

impl Name {
    pub fn new(base: impl Into<String>) -> Self {
        Name {
            base: base.into(),
            subs: Vec::new(),
            split: None,
            alias: false,
        }
    }

    pub fn with_subs(base: impl Into<String>, subs: &[u64]) -> Self {
        let mut n = Name::new(base);
        n.subs = subs.to_vec();
        n
    }

    /// `n(i) = n_i`.
    pub fn sub(&self, i: u64) -> Self {
        let mut n = self.clone();
        n.subs.push(i);
        n
    }

    /// The `i`-th split copy made by surgery.
    pub fn split(&self, i: usize) -> Self {
        let mut n = self.clone();
        n.split = Some(i);
        n
    }

    /// Output-side alias of a mixed boundary name.
    pub fn alias(&self) -> Self {
        let mut n = self.clone();
        n.alias = true;
        n
    }

    pub fn is_fresh(&self) -> bool {
        self.base.starts_with('$')
    }

    pub fn is_split(&self) -> bool {
        self.split.is_some()
    }

    /// True when `prefix` equals this name with some trailing subscripts removed.
    /// Returns those trailing subscripts.
    pub fn strip_prefix(&self, prefix: &Name) -> Option<&[u64]> {
        if self.base != prefix.base
            || self.split != prefix.split
            || self.alias != prefix.alias
            || !self.subs.starts_with(&prefix.subs)
        {
            return None;
        }
        Some(&self.subs[prefix.subs.len()..])
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.base)?;
        for s in &self.subs {
            write!(f, "[{s}]")?;
        }
        if let Some(i) = self.split {
            write!(f, "@{i}")?;
        }
        if self.alias {
            f.write_str("#out")?;
        }
        Ok(())
    }
}

impl Serialize for Name {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

/// Monotone source of fresh names for one compilation.
#[derive(Clone, Debug, Default)]
pub struct FreshNames {
    counter: u64,
}

impl FreshNames {
    pub fn new() -> Self {
        Self::default()
    }

    /// A name derived from `hint` that is not in `used` and cannot be
    /// written in source.
    pub fn fresh(&mut self, hint: &Name, used: &BTreeSet<Name>) -> Name {
        let stem = hint.to_string();
        let stem = stem.trim_start_matches('$');
        let stem = stem.split('.').next().unwrap_or(stem);
        loop {
            self.counter += 1;
            let n = Name::new(format!("${stem}.{}", self.counter));
            if !used.contains(&n) {
                return n;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(Name::with_subs("a", &[1]).to_string(), "a[1]");
        assert_eq!(Name::new("y").split(1).to_string(), "y@1");
        assert_eq!(Name::new("x").alias().to_string(), "x#out");
    }

    #[test]
    fn subscripts_are_distinct() {
        let a = Name::new("a");
        assert_ne!(a.sub(1), a);
        assert_ne!(a.sub(1), a.sub(2));
        assert_ne!(a.sub(1).sub(2), a.sub(12));
        assert_ne!(Name::new("a1"), a.sub(1));
    }

    #[test]
    fn fresh_names() {
        let mut f = FreshNames::new();
        let used: BTreeSet<Name> = [Name::new("b2")].into();
        assert_eq!(f.fresh(&Name::new("b2"), &used).to_string(), "$b2.1");
        let mut g = FreshNames::new();
        assert_eq!(g.fresh(&Name::new("x"), &BTreeSet::new()).to_string(), "$x.1");
        let a = f.fresh(&Name::new("b2"), &used);
        let b = f.fresh(&Name::new("b2"), &used);
        assert_ne!(a, b);
        assert!(a.is_fresh());
    }

    #[test]
    fn fresh_skips_used() {
        let mut f = FreshNames::new();
        let used: BTreeSet<Name> = [Name::new("$x.1")].into();
        assert_eq!(f.fresh(&Name::new("x"), &used).to_string(), "$x.2");
    }

    #[test]
    fn prefix() {
        let n = Name::with_subs("e", &[1, 2]);
        assert_eq!(n.strip_prefix(&Name::new("e")), Some(&[1u64, 2][..]));
        assert_eq!(n.strip_prefix(&Name::new("f")), None);
    }
}
