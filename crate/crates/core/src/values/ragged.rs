//! Ragged (non-rectangular) arrays.

use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Ragged<T> {
    Atom(T),
    List(Vec<Ragged<T>>),
}

/// Why an access failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AccessError {
    OutOfRange { index: i64, len: usize },
    AtomIndexed,
    BadIndex,
}

impl fmt::Display for AccessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AccessError::OutOfRange { index, len } => {
                write!(f, "index {index} out of range for array of length {len}")
            }
            AccessError::AtomIndexed => f.write_str("cannot index into an atom"),
            AccessError::BadIndex => f.write_str("index is not a natural number"),
        }
    }
}

impl<T> Ragged<T> {
    pub fn empty() -> Self {
        Ragged::List(Vec::new())
    }

    pub fn len(&self) -> usize {
        match self {
            Ragged::Atom(_) => 0,
            Ragged::List(xs) => xs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Ragged::Atom(_))
    }

    pub fn as_atom(&self) -> Option<&T> {
        match self {
            Ragged::Atom(x) => Some(x),
            Ragged::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Ragged<T>]> {
        match self {
            Ragged::Atom(_) => None,
            Ragged::List(xs) => Some(xs),
        }
    }

    /// Atoms in left-to-right order.
    pub fn flatten(&self) -> Vec<&T> {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into<'a>(&'a self, out: &mut Vec<&'a T>) {
        match self {
            Ragged::Atom(x) => out.push(x),
            Ragged::List(xs) => xs.iter().for_each(|x| x.flatten_into(out)),
        }
    }

    pub fn atom_count(&self) -> usize {
        match self {
            Ragged::Atom(_) => 1,
            Ragged::List(xs) => xs.iter().map(Ragged::atom_count).sum(),
        }
    }

    /// Same structure (`x ≃ y`).
    pub fn shape_match<U>(&self, other: &Ragged<U>) -> bool {
        match (self, other) {
            (Ragged::Atom(_), Ragged::Atom(_)) => true,
            (Ragged::List(xs), Ragged::List(ys)) => {
                xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.shape_match(y))
            }
            _ => false,
        }
    }

    pub fn map<U>(&self, f: &mut impl FnMut(&T) -> U) -> Ragged<U> {
        match self {
            Ragged::Atom(x) => Ragged::Atom(f(x)),
            Ragged::List(xs) => Ragged::List(xs.iter().map(|x| x.map(f)).collect()),
        }
    }

    pub fn try_map<U, E>(&self, f: &mut impl FnMut(&T) -> Result<U, E>) -> Result<Ragged<U>, E> {
        Ok(match self {
            Ragged::Atom(x) => Ragged::Atom(f(x)?),
            Ragged::List(xs) => {
                Ragged::List(xs.iter().map(|x| x.try_map(f)).collect::<Result<_, _>>()?)
            }
        })
    }

    /// Single-step entry access `x(i)`.
    pub fn get(&self, i: i64) -> Result<&Ragged<T>, AccessError> {
        match self {
            Ragged::Atom(_) => Err(AccessError::AtomIndexed),
            Ragged::List(xs) => usize::try_from(i)
                .ok()
                .and_then(|u| xs.get(u))
                .ok_or(AccessError::OutOfRange {
                    index: i,
                    len: xs.len(),
                }),
        }
    }
}

impl<T: Clone> Ragged<T> {
    /// Access by an index array: a natural descends, a nested list maps the
    /// remaining index over the selected entries.
    pub fn access(&self, index: &[Ragged<i64>]) -> Result<Ragged<T>, AccessError> {
        self.access_with(index, &mut |_, _| Err::<Ragged<T>, _>(AccessError::AtomIndexed))
    }

    /// Like [`Ragged::access`], with `on_atom(x, i)` defining `x(i)` for atoms.
    pub fn access_with(
        &self,
        index: &[Ragged<i64>],
        on_atom: &mut impl FnMut(&T, i64) -> Result<Ragged<T>, AccessError>,
    ) -> Result<Ragged<T>, AccessError> {
        let Some((first, rest)) = index.split_first() else {
            return Ok(self.clone());
        };
        match first {
            Ragged::Atom(i) => {
                let next = match self {
                    Ragged::Atom(x) => on_atom(x, *i)?,
                    Ragged::List(_) => self.get(*i)?.clone(),
                };
                next.access_with(rest, on_atom)
            }
            Ragged::List(items) => {
                let mut out = Vec::with_capacity(items.len());
                for item in items {
                    let mut idx = Vec::with_capacity(rest.len() + 1);
                    idx.push(item.clone());
                    idx.extend_from_slice(rest);
                    out.push(self.access_with(&idx, on_atom)?);
                }
                Ok(Ragged::List(out))
            }
        }
    }
}

impl<T: fmt::Display> fmt::Display for Ragged<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ragged::Atom(x) => write!(f, "{x}"),
            Ragged::List(xs) => {
                f.write_str("[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// `[i, i+1, ..., j]`, empty when `i > j`.
pub fn lst(i: i64, j: i64) -> Ragged<i64> {
    Ragged::List((i..=j).map(Ragged::Atom).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(x: i64) -> Ragged<i64> {
        Ragged::Atom(x)
    }
    fn l(xs: Vec<Ragged<i64>>) -> Ragged<i64> {
        Ragged::List(xs)
    }

    fn sample() -> Ragged<i64> {
        // [37, [], [[2,[55],3]]]
        l(vec![a(37), l(vec![]), l(vec![l(vec![a(2), l(vec![a(55)]), a(3)])])])
    }

    #[test]
    fn len_examples() {
        assert_eq!(sample().len(), 3);
        assert_eq!(a(37).len(), 0);
        assert_eq!(l(vec![]).len(), 0);
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(sample().flatten(), vec![&37, &2, &55, &3]);
        assert_eq!(a(7).flatten(), vec![&7]);
        assert!(l(vec![]).flatten().is_empty());
    }

    #[test]
    fn access_examples() {
        let x = l(vec![l(vec![a(10), a(11)]), l(vec![a(20), a(21)])]);
        assert_eq!(x.access(&[a(1), a(0)]), Ok(a(20)));
        assert_eq!(x.access(&[l(vec![a(0), a(1)]), a(1)]), Ok(l(vec![a(11), a(21)])));
        assert!(matches!(
            l(vec![a(5)]).access(&[a(3)]),
            Err(AccessError::OutOfRange { .. })
        ));
        assert_eq!(a(5).access(&[a(0)]), Err(AccessError::AtomIndexed));
        assert!(l(vec![a(5)]).access(&[a(-1)]).is_err());
    }

    #[test]
    fn lst_examples() {
        assert_eq!(lst(2, 4), l(vec![a(2), a(3), a(4)]));
        assert_eq!(lst(1, 1), l(vec![a(1)]));
        assert_eq!(lst(3, 2), l(vec![]));
    }

    #[test]
    fn shape_examples() {
        assert!(l(vec![a(1), l(vec![a(2), a(3)])]).shape_match(&l(vec![a(9), l(vec![a(8), a(7)])])));
        assert!(!l(vec![a(1)]).shape_match(&a(1)));
        assert!(l(vec![]).shape_match(&l(vec![])));
    }

    pub fn arb_ragged() -> impl Strategy<Value = Ragged<i64>> {
        let leaf = (0i64..100).prop_map(Ragged::Atom);
        leaf.prop_recursive(4, 32, 4, |inner| {
            prop::collection::vec(inner, 0..4).prop_map(Ragged::List)
        })
    }

    proptest! {
        #[test]
        fn flatten_counts_atoms(x in arb_ragged()) {
            prop_assert_eq!(x.flatten().len(), x.atom_count());
        }

        #[test]
        fn access_is_compositional(x in arb_ragged(), i in 0i64..4, j in 0i64..4) {
            let whole = x.access(&[a(i), a(j)]);
            let stepwise = x.access(&[a(i)]).and_then(|y| y.access(&[a(j)]));
            prop_assert_eq!(whole.ok(), stepwise.ok());
        }

        #[test]
        fn shape_match_is_equivalence(x in arb_ragged(), y in arb_ragged(), z in arb_ragged()) {
            prop_assert!(x.shape_match(&x));
            prop_assert_eq!(x.shape_match(&y), y.shape_match(&x));
            if x.shape_match(&y) && y.shape_match(&z) {
                prop_assert!(x.shape_match(&z));
            }
        }
    }
}
