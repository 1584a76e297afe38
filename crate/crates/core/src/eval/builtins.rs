//! Built-in functions and relations on values.

use std::cmp::Ordering;

use crate::syntax::{BinaryOp, RelOp};
use crate::values::{EvalError, EvalResult, Ragged, Value};

type V<C> = Ragged<Value<C>>;

fn scalar<'a, C>(x: &'a V<C>, what: &str) -> EvalResult<&'a Value<C>> {
    x.as_atom()
        .ok_or_else(|| EvalError::new(format!("{what} expects a single value, found an array {}", show(x))))
}

fn show<C>(x: &V<C>) -> String {
    let s = x.to_string();
    if s.len() > 40 {
        format!("{}...", &s[..37])
    } else {
        s
    }
}

fn number<C>(v: &Value<C>) -> Option<f64> {
    match v {
        Value::Int(i) => Some(*i as f64),
        Value::Dec(d) => Some(*d),
        _ => None,
    }
}

fn overflow(op: BinaryOp) -> EvalError {
    EvalError::new(format!("integer overflow in `{}`", op.symbol()))
}

pub fn binary<C>(op: BinaryOp, a: &V<C>, b: &V<C>) -> EvalResult<V<C>> {
    let x = scalar(a, op.symbol())?;
    let y = scalar(b, op.symbol())?;
    let v = match (x, y) {
        (Value::Int(i), Value::Int(j)) => int_op(op, *i, *j)?,
        _ => match (number(x), number(y)) {
            (Some(i), Some(j)) => Value::Dec(match op {
                BinaryOp::Add => i + j,
                BinaryOp::Sub => i - j,
                BinaryOp::Mul => i * j,
                BinaryOp::Div => i / j,
                BinaryOp::Rem => i % j,
                BinaryOp::Pow => i.powf(j),
            }),
            _ => {
                return Err(EvalError::new(format!(
                    "`{}` is not defined on {} and {}",
                    op.symbol(),
                    x.kind(),
                    y.kind()
                )))
            }
        },
    };
    Ok(Ragged::Atom(v))
}

fn int_op<C>(op: BinaryOp, i: i64, j: i64) -> EvalResult<Value<C>> {
    let r = match op {
        BinaryOp::Add => i.checked_add(j),
        BinaryOp::Sub => i.checked_sub(j),
        BinaryOp::Mul => i.checked_mul(j),
        BinaryOp::Div | BinaryOp::Rem if j == 0 => {
            return Err(EvalError::new("division by zero"));
        }
        BinaryOp::Div => i.checked_div_euclid(j),
        BinaryOp::Rem => i.checked_rem_euclid(j),
        BinaryOp::Pow => {
            if j < 0 {
                return Ok(Value::Dec((i as f64).powf(j as f64)));
            }
            u32::try_from(j).ok().and_then(|e| i.checked_pow(e))
        }
    };
    r.map(Value::Int).ok_or_else(|| overflow(op))
}

pub fn negate<C>(a: &V<C>) -> EvalResult<V<C>> {
    match scalar(a, "-")? {
        Value::Int(i) => i
            .checked_neg()
            .map(|n| Ragged::Atom(Value::Int(n)))
            .ok_or_else(|| overflow(BinaryOp::Sub)),
        Value::Dec(d) => Ok(Ragged::Atom(Value::Dec(-d))),
        v => Err(EvalError::new(format!("cannot negate a {}", v.kind()))),
    }
}

pub fn len<C>(a: &V<C>) -> V<C> {
    Ragged::Atom(Value::Int(a.len() as i64))
}

fn compare<C>(x: &Value<C>, y: &Value<C>) -> Option<Ordering> {
    match (x, y) {
        (Value::Int(i), Value::Int(j)) => Some(i.cmp(j)),
        (Value::Text(a), Value::Text(b)) => Some(a.cmp(b)),
        (Value::Bool(a), Value::Bool(b)) => Some(a.cmp(b)),
        _ => number(x)?.partial_cmp(&number(y)?),
    }
}

/// `=` and `!=` compare structurally; the order relations need two
/// comparable single values.
pub fn relation<C: PartialEq>(op: RelOp, a: &V<C>, b: &V<C>) -> EvalResult<bool> {
    match op {
        RelOp::Eq => return Ok(a == b),
        RelOp::Ne => return Ok(a != b),
        _ => {}
    }
    let x = scalar(a, op.symbol())?;
    let y = scalar(b, op.symbol())?;
    let ord = compare(x, y).ok_or_else(|| {
        EvalError::new(format!(
            "cannot compare {} with {} using `{}`",
            x.kind(),
            y.kind(),
            op.symbol()
        ))
    })?;
    Ok(match op {
        RelOp::Le => ord != Ordering::Greater,
        RelOp::Lt => ord == Ordering::Less,
        RelOp::Ge => ord != Ordering::Less,
        RelOp::Gt => ord == Ordering::Greater,
        RelOp::Eq | RelOp::Ne => unreachable!(),
    })
}
