//! Inference of the index-defining scope of a definition application.
//!
//! The interface patterns are evaluated in a scope that binds only the
//! plain parameter names and the unknowns solved so far. An unknown is
//! solved from a slice in the first index list of a pattern whose length
//! is affine in that unknown, using the length of the matching argument.

use std::collections::{BTreeMap, BTreeSet};

use super::engine::{Evaluator, Val};
use super::Definition;
use crate::sorts::SemanticSort;
use crate::syntax::pretty::variable_to_string;
use crate::syntax::{ListItem, TermAst, VariableAst};
use crate::values::{EvalError, EvalResult, Name, Ragged, Scope, Value};

pub(super) struct IndexScope<C> {
    pub sigma: Scope<C>,
    pub params: Vec<Ragged<Name>>,
    pub nodes: Vec<Ragged<Name>>,
}

/// Base names of the variables in a term.
pub(super) fn term_vars(t: &TermAst, out: &mut BTreeSet<Name>) {
    match t {
        TermAst::Var(v) => var_vars(v, out),
        TermAst::Nat(_)
        | TermAst::Dec(_)
        | TermAst::Bool(_)
        | TermAst::Str(_)
        | TermAst::Component(_)
        | TermAst::Definition(_) => {}
        TermAst::List(l) => list_vars(&l.0, out),
        TermAst::Slice(a, b) | TermAst::Binary(_, a, b) => {
            term_vars(a, out);
            term_vars(b, out);
        }
        TermAst::Index(x, l) => {
            term_vars(x, out);
            list_vars(&l.0, out);
        }
        TermAst::Len(x) | TermAst::Neg(x) => term_vars(x, out),
    }
}

pub(super) fn var_vars(v: &VariableAst, out: &mut BTreeSet<Name>) {
    out.insert(Name::new(v.name.joined()));
    for l in &v.indices {
        list_vars(&l.0, out);
    }
}

pub(super) fn list_vars(items: &[ListItem], out: &mut BTreeSet<Name>) {
    for item in items {
        match item {
            ListItem::Term(t) => term_vars(t, out),
            ListItem::Range(a, b) | ListItem::Slice(a, b) => {
                term_vars(a, out);
                term_vars(b, out);
            }
        }
    }
}

fn index_vars(v: &VariableAst) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    for l in &v.indices {
        list_vars(&l.0, &mut out);
    }
    out
}

/// Length of the array `d` levels down along first entries.
fn len_at<T>(x: &Ragged<T>, d: usize) -> Option<i64> {
    let mut cur = x;
    for _ in 0..d {
        cur = cur.as_list()?.first()?;
    }
    cur.as_list().map(|xs| xs.len() as i64)
}

struct Equation<'a> {
    lo: &'a TermAst,
    hi: &'a TermAst,
    inclusive: bool,
    len: i64,
}

fn equations<'a, T>(v: &'a VariableAst, target: &Ragged<T>, out: &mut Vec<Equation<'a>>) {
    let Some(first) = v.indices.first() else {
        return;
    };
    let mut depth = 0;
    for item in &first.0 {
        let (lo, hi, inclusive) = match item {
            ListItem::Slice(lo, hi) => (lo, hi, true),
            ListItem::Term(TermAst::Slice(lo, hi)) => (&**lo, &**hi, false),
            ListItem::Term(TermAst::List(_)) => {
                depth += 1;
                continue;
            }
            _ => continue,
        };
        if let Some(len) = len_at(target, depth) {
            out.push(Equation {
                lo,
                hi,
                inclusive,
                len,
            });
        }
        depth += 1;
    }
}

fn shape_string<T>(x: &Ragged<T>) -> String {
    match x {
        Ragged::Atom(_) => "a single value".into(),
        Ragged::List(xs) => format!("an array of length {}", xs.len()),
    }
}

impl<'s, S: SemanticSort> Evaluator<'s, S> {
    pub(super) fn index_scope(
        &mut self,
        d: &Definition<S::Component>,
        t: &[Val<S::Component>],
        q: &[Ragged<Name>],
    ) -> EvalResult<IndexScope<S::Component>> {
        let lit = &d.lit;
        if lit.params.len() != t.len() {
            return Err(EvalError::new(format!(
                "`{}` expects {} parameter(s) but got {}",
                d.label(),
                lit.params.len(),
                t.len()
            )));
        }
        if lit.nodes.len() != q.len() {
            return Err(EvalError::new(format!(
                "`{}` expects {} node(s) but got {}",
                d.label(),
                lit.nodes.len(),
                q.len()
            )));
        }
        let mut sigma: Scope<S::Component> = Scope::new();
        for (p, v) in lit.params.iter().zip(t) {
            if p.indices.is_empty() {
                sigma = sigma.with(Name::new(p.name.joined()), v.clone());
            }
        }
        let t_shapes: Vec<Ragged<()>> = t.iter().map(|x| x.map(&mut |_| ())).collect();
        let q_shapes: Vec<Ragged<()>> = q.iter().map(|x| x.map(&mut |_| ())).collect();
        let patterns: Vec<(&VariableAst, &Ragged<()>)> = lit
            .params
            .iter()
            .zip(&t_shapes)
            .chain(lit.nodes.iter().map(|n| &n.var).zip(&q_shapes))
            .collect();

        loop {
            let unknown: BTreeSet<Name> = patterns
                .iter()
                .flat_map(|(v, _)| index_vars(v))
                .filter(|n| self.lookup(n, &sigma).is_none())
                .collect();
            if unknown.is_empty() {
                break;
            }
            let mut candidates: BTreeMap<Name, BTreeSet<i64>> = BTreeMap::new();
            let mut eqs = Vec::new();
            for (v, shape) in &patterns {
                equations(v, shape, &mut eqs);
            }
            for eq in &eqs {
                let mut free = BTreeSet::new();
                term_vars(eq.lo, &mut free);
                term_vars(eq.hi, &mut free);
                free.retain(|n| unknown.contains(n));
                if free.len() != 1 {
                    continue;
                }
                let u = free.into_iter().next().unwrap();
                if let Some(val) = self.solve_length(eq, &u, &sigma) {
                    candidates.entry(u).or_default().insert(val);
                }
            }
            if candidates.is_empty() {
                let names: Vec<String> = unknown.iter().map(|n| format!("`{n}`")).collect();
                return Err(EvalError::new(format!(
                    "cannot infer {} from the interface of `{}`",
                    names.join(", "),
                    d.label()
                )));
            }
            for (u, vals) in candidates {
                if vals.len() > 1 {
                    let vals: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
                    return Err(EvalError::new(format!(
                        "index-defining scope of `{}` is not unique: `{u}` could be {}",
                        d.label(),
                        vals.join(" or ")
                    )));
                }
                let v = *vals.iter().next().unwrap();
                sigma = sigma.with(u, Ragged::Atom(Value::Int(v)));
            }
        }

        let mut params = Vec::new();
        for (p, v) in lit.params.iter().zip(t) {
            let s = self.eval_variable(p, &sigma)?;
            if !s.shape_match(v) {
                return Err(EvalError::new(format!(
                    "parameter `{}` of `{}` is {} but the value is {}",
                    variable_to_string(p),
                    d.label(),
                    shape_string(&s),
                    shape_string(v)
                )));
            }
            params.push(s);
        }
        let mut nodes = Vec::new();
        for (n, a) in lit.nodes.iter().zip(q) {
            let p = self.eval_variable(&n.var, &sigma)?;
            if !p.shape_match(a) {
                return Err(EvalError::new(format!(
                    "node `{}` of `{}` is {} but the argument `{a}` is {}",
                    variable_to_string(&n.var),
                    d.label(),
                    shape_string(&p),
                    shape_string(a)
                )));
            }
            nodes.push(p);
        }
        let mut seen = BTreeSet::new();
        for n in params.iter().chain(&nodes).flat_map(|x| x.flatten()) {
            if !seen.insert(n) {
                return Err(EvalError::new(format!(
                    "name `{n}` occurs more than once in the interface of `{}`",
                    d.label()
                )));
            }
        }
        Ok(IndexScope {
            sigma,
            params,
            nodes,
        })
    }

    /// Solves `len(lo..hi) = eq.len` for `u`, assuming the length is affine in `u`.
    fn solve_length(&mut self, eq: &Equation, u: &Name, sigma: &Scope<S::Component>) -> Option<i64> {
        let width = |this: &mut Self, v: i64| -> Option<i64> {
            let s = sigma.with(u.clone(), Ragged::Atom(Value::Int(v)));
            let lo = this.eval_term(eq.lo, &s).ok()?;
            let hi = this.eval_term(eq.hi, &s).ok()?;
            let (Ragged::Atom(Value::Int(lo)), Ragged::Atom(Value::Int(hi))) = (lo, hi) else {
                return None;
            };
            Some(hi - lo + i64::from(eq.inclusive))
        };
        let w0 = width(self, 0)?;
        let w1 = width(self, 1)?;
        let w2 = width(self, 2)?;
        let slope = w1 - w0;
        if slope == 0 || w2 - w1 != slope {
            return None;
        }
        let num = eq.len - w0;
        if num % slope != 0 {
            return None;
        }
        let val = num / slope;
        (width(self, val)?.max(0) == eq.len).then_some(val)
    }
}
