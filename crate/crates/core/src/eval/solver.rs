//! Minimal solutions of comprehension predicates.
//!
//! The predicate is split into a goal list that is solved by backtracking.
//! Memberships with an unbound left-hand side enumerate the list; every other
//! atom filters once its variables are bound and is postponed until then.
//! Goals that never become ready fail.

use std::collections::BTreeSet;

use super::builtins;
use super::engine::{Evaluator, Val};
use super::index::{list_vars, term_vars, var_vars};
use crate::sorts::SemanticSort;
use crate::syntax::{PredicateAst, Quantifier, TermAst, VariableAst};
use crate::values::{Datum, EvalError, EvalResult, Name, Ragged, Scope, Value};

#[derive(Debug)]
pub enum Solutions<C> {
    Finite(Vec<Scope<C>>),
    /// Some variable is not bounded by any membership.
    Infinite,
}

impl<C> Solutions<C> {
    pub fn finite(self) -> Option<Vec<Scope<C>>> {
        match self {
            Solutions::Finite(s) => Some(s),
            Solutions::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum SortKey {
    Atom(u8, Option<Datum>),
    List(Vec<SortKey>),
}

fn sort_key<C>(v: &Val<C>) -> SortKey {
    match v {
        Ragged::Atom(x) => {
            let (rank, datum) = x.sort_key();
            SortKey::Atom(rank, datum)
        }
        Ragged::List(xs) => SortKey::List(xs.iter().map(sort_key).collect()),
    }
}

fn bound<C>(scope: &Scope<C>, n: &Name) -> bool {
    scope.contains(n) || scope.names().any(|k| k.base == n.base)
}

/// Free variables of a predicate, by base name.
fn pred_vars(p: &PredicateAst, locals: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    let add = |names: BTreeSet<Name>, locals: &Vec<Name>, out: &mut BTreeSet<Name>| {
        out.extend(names.into_iter().filter(|n| !locals.contains(n)));
    };
    match p {
        PredicateAst::True | PredicateAst::False => {}
        PredicateAst::Member(v, t) => {
            let mut s = BTreeSet::new();
            var_vars(v, &mut s);
            term_vars(t, &mut s);
            add(s, locals, out);
        }
        PredicateAst::Rel(_, a, b) => {
            let mut s = BTreeSet::new();
            term_vars(a, &mut s);
            term_vars(b, &mut s);
            add(s, locals, out);
        }
        PredicateAst::Holds(v) => {
            let mut s = BTreeSet::new();
            var_vars(v, &mut s);
            add(s, locals, out);
        }
        PredicateAst::Not(x) => pred_vars(x, locals, out),
        PredicateAst::And(a, b) | PredicateAst::Or(a, b) | PredicateAst::Implies(a, b) => {
            pred_vars(a, locals, out);
            pred_vars(b, locals, out);
        }
        PredicateAst::Quantified {
            var, list, body, ..
        } => {
            let mut s = BTreeSet::new();
            list_vars(&list.0, &mut s);
            add(s, locals, out);
            locals.push(Name::new(var.clone()));
            pred_vars(body, locals, out);
            locals.pop();
        }
    }
}

/// Base names that occur on the left of a membership outside any negation
/// or quantifier.
fn positive_members(p: &PredicateAst, out: &mut BTreeSet<Name>) {
    match p {
        PredicateAst::Member(v, _) => {
            out.insert(Name::new(v.name.joined()));
        }
        PredicateAst::And(a, b) | PredicateAst::Or(a, b) => {
            positive_members(a, out);
            positive_members(b, out);
        }
        PredicateAst::Implies(_, b) => positive_members(b, out),
        _ => {}
    }
}

struct Search<C> {
    out: Vec<Scope<C>>,
    error: Option<EvalError>,
}

impl<C> Search<C> {
    fn fail(&mut self, e: EvalError) {
        self.error.get_or_insert(e);
    }
}

impl<'s, S: SemanticSort> Evaluator<'s, S> {
    /// `min⟦P⟧(σ)`, sorted by the values of the newly bound variables.
    pub fn solve(
        &mut self,
        p: &PredicateAst,
        scope: &Scope<S::Component>,
    ) -> EvalResult<Solutions<S::Component>> {
        let mut free = BTreeSet::new();
        pred_vars(p, &mut Vec::new(), &mut free);
        free.retain(|n| !bound(scope, n));
        let mut bounded = BTreeSet::new();
        positive_members(p, &mut bounded);
        if !free.is_subset(&bounded) {
            return Ok(Solutions::Infinite);
        }
        let mut st = Search {
            out: Vec::new(),
            error: None,
        };
        self.search(vec![p.clone()], Vec::new(), scope.clone(), &mut st);
        if st.out.is_empty() {
            if let Some(e) = st.error {
                return Err(e);
            }
        }
        Ok(Solutions::Finite(minimize(st.out, scope)))
    }

    /// True when `p` has a solution that binds nothing new.
    fn holds(&mut self, p: &PredicateAst, scope: &Scope<S::Component>) -> EvalResult<bool> {
        let mut st = Search {
            out: Vec::new(),
            error: None,
        };
        self.search(vec![p.clone()], Vec::new(), scope.clone(), &mut st);
        let n = scope.len();
        if st.out.iter().any(|s| s.len() == n) {
            return Ok(true);
        }
        match st.error {
            Some(e) => Err(e),
            None => Ok(false),
        }
    }

    fn term_ready(&self, t: &TermAst, scope: &Scope<S::Component>) -> bool {
        let mut s = BTreeSet::new();
        term_vars(t, &mut s);
        s.iter().all(|n| bound(scope, n))
    }

    fn indices_ready(&self, v: &VariableAst, scope: &Scope<S::Component>) -> bool {
        let mut s = BTreeSet::new();
        for l in &v.indices {
            list_vars(&l.0, &mut s);
        }
        s.iter().all(|n| bound(scope, n))
    }

    fn pred_ready(&self, p: &PredicateAst, scope: &Scope<S::Component>) -> bool {
        let mut s = BTreeSet::new();
        pred_vars(p, &mut Vec::new(), &mut s);
        s.iter().all(|n| bound(scope, n))
    }

    fn goal_ready(&self, g: &PredicateAst, scope: &Scope<S::Component>) -> bool {
        match g {
            PredicateAst::Member(v, t) => self.term_ready(t, scope) && self.indices_ready(v, scope),
            PredicateAst::Rel(_, a, b) => self.term_ready(a, scope) && self.term_ready(b, scope),
            PredicateAst::Holds(_) | PredicateAst::Not(_) | PredicateAst::Quantified { .. } => {
                self.pred_ready(g, scope)
            }
            _ => true,
        }
    }

    /// `goals` is a stack: the next goal is at the end.
    fn search(
        &mut self,
        mut goals: Vec<PredicateAst>,
        mut deferred: Vec<PredicateAst>,
        scope: Scope<S::Component>,
        st: &mut Search<S::Component>,
    ) {
        let Some(goal) = goals.pop() else {
            if deferred.is_empty() {
                st.out.push(scope);
            } else if deferred.iter().any(|g| self.goal_ready(g, &scope)) {
                deferred.reverse();
                self.search(deferred, Vec::new(), scope, st);
            }
            return;
        };
        if !self.goal_ready(&goal, &scope) {
            deferred.push(goal);
            return self.search(goals, deferred, scope, st);
        }
        match goal {
            PredicateAst::True => self.search(goals, deferred, scope, st),
            PredicateAst::False => {}
            PredicateAst::And(a, b) => {
                goals.push(*b);
                goals.push(*a);
                self.search(goals, deferred, scope, st);
            }
            PredicateAst::Or(a, b) => {
                let mut left = goals.clone();
                left.push(*a);
                self.search(left, deferred.clone(), scope.clone(), st);
                goals.push(*b);
                self.search(goals, deferred, scope, st);
            }
            PredicateAst::Implies(a, b) => {
                goals.push(PredicateAst::or(PredicateAst::Not(a), *b));
                self.search(goals, deferred, scope, st);
            }
            PredicateAst::Member(v, t) => {
                let names = match self.eval_variable(&v, &scope) {
                    Ok(n) => n,
                    Err(e) => return st.fail(e),
                };
                let list = match self.eval_term(&t, &scope) {
                    Ok(Ragged::List(xs)) => xs,
                    Ok(Ragged::Atom(_)) => {
                        self.warn(format!(
                            "membership in `{}`, which is not a list, has no solutions",
                            crate::syntax::pretty::term_to_string(&t)
                        ));
                        return;
                    }
                    Err(e) => return st.fail(e),
                };
                if let Ragged::Atom(n) = &names {
                    if self.lookup(n, &scope).is_none() {
                        for x in list {
                            self.search(goals.clone(), deferred.clone(), scope.with(n.clone(), x), st);
                        }
                        return;
                    }
                }
                let value = match self.eval_term(&TermAst::Var(v), &scope) {
                    Ok(x) => x,
                    // partially bound arrays are not members of anything
                    Err(_) => return,
                };
                if list.contains(&value) {
                    self.search(goals, deferred, scope, st);
                }
            }
            PredicateAst::Rel(op, a, b) => {
                let r = self
                    .eval_term(&a, &scope)
                    .and_then(|x| Ok((x, self.eval_term(&b, &scope)?)))
                    .and_then(|(x, y)| builtins::relation(op, &x, &y));
                match r {
                    Ok(true) => self.search(goals, deferred, scope, st),
                    Ok(false) => {}
                    Err(e) => st.fail(e),
                }
            }
            PredicateAst::Holds(v) => match self.eval_term(&TermAst::Var(v.clone()), &scope) {
                Ok(Ragged::Atom(Value::Bool(true))) => self.search(goals, deferred, scope, st),
                Ok(Ragged::Atom(Value::Bool(false))) => {}
                Ok(other) => st.fail(EvalError::new(format!(
                    "`{}` is used as a condition but is {other}",
                    crate::syntax::pretty::variable_to_string(&v)
                ))),
                Err(e) => st.fail(e),
            },
            PredicateAst::Not(p) => match self.holds(&p, &scope) {
                Ok(false) => self.search(goals, deferred, scope, st),
                Ok(true) => {}
                Err(e) => st.fail(e),
            },
            PredicateAst::Quantified {
                quantifier,
                var,
                list,
                body,
            } => {
                let items = match self.eval_list(&list, &scope) {
                    Ok(Ragged::List(xs)) => xs,
                    Ok(_) => unreachable!("lists evaluate to arrays"),
                    Err(e) => return st.fail(e),
                };
                let name = Name::new(var);
                let mut result = quantifier == Quantifier::Forall;
                for x in items {
                    match self.holds(&body, &scope.with(name.clone(), x)) {
                        Ok(h) if h != result => {
                            result = h;
                            break;
                        }
                        Ok(_) => {}
                        Err(e) => return st.fail(e),
                    }
                }
                if result {
                    self.search(goals, deferred, scope, st);
                }
            }
        }
    }
}

/// Drops duplicates and solutions whose domain strictly contains another
/// solution's domain, then sorts.
fn minimize<C: PartialEq>(solutions: Vec<Scope<C>>, base: &Scope<C>) -> Vec<Scope<C>> {
    let mut unique: Vec<Scope<C>> = Vec::new();
    for s in solutions {
        if !unique.contains(&s) {
            unique.push(s);
        }
    }
    let domains: Vec<BTreeSet<&Name>> = unique.iter().map(|s| s.names().collect()).collect();
    let keep: Vec<bool> = domains
        .iter()
        .map(|d| {
            !domains
                .iter()
                .any(|other| other.len() < d.len() && other.is_subset(d))
        })
        .collect();
    let mut kept: Vec<(Vec<(Name, SortKey)>, Scope<C>)> = unique
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(s, _)| {
            let key = s
                .iter()
                .filter(|(n, _)| !base.contains(n))
                .map(|(n, v)| (n.clone(), sort_key(v)))
                .collect();
            (key, s)
        })
        .collect();
    kept.sort_by(|a, b| a.0.cmp(&b.0));
    kept.into_iter().map(|(_, s)| s).collect()
}
