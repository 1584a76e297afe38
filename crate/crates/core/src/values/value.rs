//! The value domain.

use std::cmp::Ordering;
use std::fmt;
use std::rc::Rc;

use serde::{Serialize, Serializer};

use crate::eval::Definition;

/// A single value. Arrays of values are `Ragged<Value<C>>`.
pub enum Value<C> {
    Int(i64),
    Bool(bool),
    Text(String),
    Dec(f64),
    Component(Rc<C>),
    Definition(Rc<Definition<C>>),
}

impl<C> Clone for Value<C> {
    fn clone(&self) -> Self {
        match self {
            Value::Int(i) => Value::Int(*i),
            Value::Bool(b) => Value::Bool(*b),
            Value::Text(s) => Value::Text(s.clone()),
            Value::Dec(d) => Value::Dec(*d),
            Value::Component(c) => Value::Component(c.clone()),
            Value::Definition(d) => Value::Definition(d.clone()),
        }
    }
}

impl<C: PartialEq> PartialEq for Value<C> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Text(a), Value::Text(b)) => a == b,
            (Value::Dec(a), Value::Dec(b)) => a == b,
            (Value::Int(a), Value::Dec(b)) | (Value::Dec(b), Value::Int(a)) => *a as f64 == *b,
            (Value::Component(a), Value::Component(b)) => Rc::ptr_eq(a, b) || a == b,
            (Value::Definition(a), Value::Definition(b)) => Rc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl<C> fmt::Debug for Value<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C> fmt::Display for Value<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Text(s) => write!(f, "{s:?}"),
            Value::Dec(d) => write!(f, "{d:?}"),
            Value::Component(_) => f.write_str("<component>"),
            Value::Definition(d) => write!(f, "<definition {}>", d.label()),
        }
    }
}

impl<C> Value<C> {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Bool(_) => "boolean",
            Value::Text(_) => "text",
            Value::Dec(_) => "decimal",
            Value::Component(_) => "component",
            Value::Definition(_) => "definition",
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    }

    /// Plain data carried into primitives by substitution.
    pub fn to_datum(&self) -> Option<Datum> {
        Some(match self {
            Value::Int(i) => Datum::Int(*i),
            Value::Bool(b) => Datum::Bool(*b),
            Value::Text(s) => Datum::Text(s.clone()),
            Value::Dec(d) => Datum::Dec(*d),
            Value::Component(_) | Value::Definition(_) => return None,
        })
    }

    /// Ordering used to sort comprehension solutions.
    pub fn sort_key(&self) -> (u8, Option<Datum>) {
        let rank = match self {
            Value::Int(_) | Value::Dec(_) => 0,
            Value::Bool(_) => 1,
            Value::Text(_) => 2,
            Value::Component(_) => 3,
            Value::Definition(_) => 4,
        };
        (rank, self.to_datum())
    }
}

/// Data that flows through ports and memory cells, and the parameter values
/// substituted into primitives.
#[derive(Clone, Debug)]
pub enum Datum {
    Int(i64),
    Bool(bool),
    Text(String),
    Dec(f64),
    /// Anything the built-in sorts do not interpret.
    Opaque(String),
}

impl Datum {
    fn rank(&self) -> u8 {
        match self {
            Datum::Int(_) | Datum::Dec(_) => 0,
            Datum::Bool(_) => 1,
            Datum::Text(_) => 2,
            Datum::Opaque(_) => 3,
        }
    }
}

impl Ord for Datum {
    fn cmp(&self, other: &Self) -> Ordering {
        use Datum::*;
        match (self, other) {
            (Int(a), Int(b)) => a.cmp(b),
            (Dec(a), Dec(b)) => a.total_cmp(b),
            (Int(a), Dec(b)) => (*a as f64).total_cmp(b).then(Ordering::Less),
            (Dec(a), Int(b)) => a.total_cmp(&(*b as f64)).then(Ordering::Greater),
            (Bool(a), Bool(b)) => a.cmp(b),
            (Text(a), Text(b)) | (Opaque(a), Opaque(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Datum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Datum {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Datum {}

impl std::hash::Hash for Datum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        match self {
            Datum::Int(i) => i.hash(state),
            Datum::Dec(d) => d.to_bits().hash(state),
            Datum::Bool(b) => b.hash(state),
            Datum::Text(s) | Datum::Opaque(s) => s.hash(state),
        }
    }
}

impl fmt::Display for Datum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Datum::Int(i) => write!(f, "{i}"),
            Datum::Bool(b) => write!(f, "{b}"),
            Datum::Text(s) => write!(f, "{s:?}"),
            Datum::Dec(d) => write!(f, "{d:?}"),
            Datum::Opaque(s) => write!(f, "<{s}>"),
        }
    }
}

impl Serialize for Datum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Datum::Int(i) => s.serialize_i64(*i),
            Datum::Bool(b) => s.serialize_bool(*b),
            Datum::Text(t) => s.serialize_str(t),
            Datum::Dec(d) => s.serialize_f64(*d),
            Datum::Opaque(t) => s.collect_str(&format_args!("<{t}>")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn datum_order_is_total() {
        let mut xs = vec![
            Datum::Text("b".into()),
            Datum::Int(3),
            Datum::Bool(false),
            Datum::Dec(2.5),
            Datum::Int(1),
        ];
        xs.sort();
        assert_eq!(
            xs,
            vec![
                Datum::Int(1),
                Datum::Dec(2.5),
                Datum::Int(3),
                Datum::Bool(false),
                Datum::Text("b".into())
            ]
        );
        assert_ne!(Datum::Int(2), Datum::Dec(2.0));
    }
}
