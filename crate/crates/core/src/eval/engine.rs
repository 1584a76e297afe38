//! Terms, lists, variables, components and definition application.

use std::collections::HashMap;
use std::path::PathBuf;
use std::rc::Rc;

use super::builtins;
use super::Definition;
use crate::sorts::{AtomContext, Replacement, SemanticSort, SortError, Substitution};
use crate::syntax::{
    ComponentAst, DefinitionAst, ListAst, ListItem, Span, TermAst, VariableAst,
};
use crate::values::{lst, Datum, EvalError, EvalResult, FreshNames, Name, Ragged, Scope, Value};

pub type Val<C> = Ragged<Value<C>>;

#[derive(Clone, Debug)]
pub struct Options {
    /// Let a top-level definition refer to itself.
    pub recursion: bool,
    /// Limit on nested instantiations.
    pub max_depth: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            recursion: true,
            max_depth: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub message: String,
    pub span: Option<Span>,
}

/// Evaluation state for one compilation.
pub struct Evaluator<'s, S: SemanticSort> {
    pub sort: &'s S,
    pub options: Options,
    pub fresh: FreshNames,
    pub warnings: Vec<Warning>,
    /// Directories searched for imports after the bundled library.
    pub search_paths: Vec<PathBuf>,
    pub(super) depth: usize,
    pub(super) max_depth_seen: usize,
    pub(super) frames: Vec<AtomContext>,
    pub(super) modules: HashMap<String, Scope<S::Component>>,
    pub(super) loading: Vec<String>,
}

pub(super) fn sort_error(e: SortError) -> EvalError {
    EvalError::new(e.to_string())
}

pub(super) fn natural<C>(v: &Value<C>) -> EvalResult<i64> {
    match v {
        Value::Int(i) if *i >= 0 => Ok(*i),
        _ => Err(EvalError::new(format!(
            "index `{v}` is not a natural number"
        ))),
    }
}

fn integer<C>(v: &Val<C>, what: &str) -> EvalResult<i64> {
    match v {
        Ragged::Atom(Value::Int(i)) => Ok(*i),
        _ => Err(EvalError::new(format!("{what} must be an integer, found {v}"))),
    }
}

fn int_list<C>(xs: Ragged<i64>) -> Val<C> {
    xs.map(&mut |i| Value::Int(*i))
}

impl<'s, S: SemanticSort> Evaluator<'s, S> {
    pub fn new(sort: &'s S) -> Self {
        Self::with_options(sort, Options::default())
    }

    pub fn with_options(sort: &'s S, options: Options) -> Self {
        Evaluator {
            sort,
            options,
            fresh: FreshNames::new(),
            warnings: Vec::new(),
            search_paths: Vec::new(),
            depth: 0,
            max_depth_seen: 0,
            frames: Vec::new(),
            modules: HashMap::new(),
            loading: Vec::new(),
        }
    }

    /// Deepest nesting of instantiations reached so far.
    pub fn max_depth_seen(&self) -> usize {
        self.max_depth_seen
    }

    pub(super) fn warn(&mut self, message: impl Into<String>) {
        let span = self.frames.last().and_then(|f| f.span);
        self.warnings.push(Warning {
            message: message.into(),
            span,
        });
    }

    /// Looks `name` up, falling back to indexing an array bound to a prefix
    /// of it: `x[1]` reads entry 1 of `x` when `x[1]` itself is unbound.
    pub fn lookup(&self, name: &Name, scope: &Scope<S::Component>) -> Option<Val<S::Component>> {
        if let Some(v) = scope.get(name) {
            return Some(v.clone());
        }
        for k in (0..name.subs.len()).rev() {
            let mut prefix = name.clone();
            prefix.subs.truncate(k);
            if let Some(v) = scope.get(&prefix) {
                let idx: Vec<_> = name.subs[k..].iter().map(|i| Ragged::Atom(*i as i64)).collect();
                return v.access(&idx).ok();
            }
        }
        None
    }

    /// Evaluates an index list to natural-number index items.
    pub fn index_items(
        &mut self,
        l: &ListAst,
        scope: &Scope<S::Component>,
    ) -> EvalResult<Vec<Ragged<i64>>> {
        let v = self.eval_list(l, scope)?;
        let Ragged::List(items) = v else {
            unreachable!("lists evaluate to arrays")
        };
        items
            .iter()
            .map(|x| x.try_map(&mut |v| natural(v)))
            .collect()
    }

    /// `⟦V⟧`: an array of names.
    pub fn eval_variable(
        &mut self,
        v: &VariableAst,
        scope: &Scope<S::Component>,
    ) -> EvalResult<Ragged<Name>> {
        let mut names = Ragged::Atom(Name::new(v.name.joined()));
        for l in &v.indices {
            let idx = self.index_items(l, scope)?;
            names = names
                .access_with(&idx, &mut |n, i| Ok(Ragged::Atom(n.sub(i as u64))))
                .map_err(|e| EvalError::new(format!("in `{}`: {e}", crate::syntax::pretty::variable_to_string(v))))?;
        }
        Ok(names)
    }

    /// `⟦U⟧`.
    pub fn eval_arguments(
        &mut self,
        args: &[VariableAst],
        scope: &Scope<S::Component>,
    ) -> EvalResult<Ragged<Name>> {
        Ok(Ragged::List(
            args.iter()
                .map(|a| self.eval_variable(a, scope))
                .collect::<EvalResult<_>>()?,
        ))
    }

    fn resolve_names(
        &self,
        names: &Ragged<Name>,
        scope: &Scope<S::Component>,
    ) -> EvalResult<Val<S::Component>> {
        match names {
            Ragged::Atom(n) => self
                .lookup(n, scope)
                .ok_or_else(|| EvalError::new(format!("unbound variable `{n}`"))),
            Ragged::List(xs) => Ok(Ragged::List(
                xs.iter()
                    .map(|x| self.resolve_names(x, scope))
                    .collect::<EvalResult<_>>()?,
            )),
        }
    }

    /// `⟦T⟧`.
    pub fn eval_term(
        &mut self,
        t: &TermAst,
        scope: &Scope<S::Component>,
    ) -> EvalResult<Val<S::Component>> {
        Ok(match t {
            TermAst::Var(v) => {
                let names = self.eval_variable(v, scope)?;
                self.resolve_names(&names, scope)?
            }
            TermAst::Nat(n) => Ragged::Atom(Value::Int(
                i64::try_from(*n).map_err(|_| EvalError::new(format!("integer {n} is too large")))?,
            )),
            TermAst::Dec(d) => Ragged::Atom(Value::Dec(*d)),
            TermAst::Bool(b) => Ragged::Atom(Value::Bool(*b)),
            TermAst::Str(s) => Ragged::Atom(Value::Text(s.clone())),
            TermAst::Component(c) => {
                Ragged::Atom(Value::Component(Rc::new(self.eval_component(c, scope)?)))
            }
            TermAst::Definition(d) => Ragged::Atom(Value::Definition(self.eval_definition(d, scope)?)),
            TermAst::List(l) => self.eval_list(l, scope)?,
            TermAst::Slice(a, b) => {
                let x0 = integer(&self.eval_term(a, scope)?, "slice start")?;
                let x1 = integer(&self.eval_term(b, scope)?, "slice end")?;
                int_list(lst(x0, x1.saturating_sub(1)))
            }
            TermAst::Index(x, l) => {
                let x = self.eval_term(x, scope)?;
                let idx = self.index_items(l, scope)?;
                x.access(&idx).map_err(|e| EvalError::new(e.to_string()))?
            }
            TermAst::Len(x) => builtins::len(&self.eval_term(x, scope)?),
            TermAst::Neg(x) => builtins::negate(&self.eval_term(x, scope)?)?,
            TermAst::Binary(op, a, b) => {
                let a = self.eval_term(a, scope)?;
                let b = self.eval_term(b, scope)?;
                builtins::binary(*op, &a, &b)?
            }
        })
    }

    /// `⟦L⟧`.
    pub fn eval_list(
        &mut self,
        l: &ListAst,
        scope: &Scope<S::Component>,
    ) -> EvalResult<Val<S::Component>> {
        let mut out = Vec::new();
        for item in &l.0 {
            match item {
                ListItem::Term(t) => out.push(self.eval_term(t, scope)?),
                ListItem::Range(a, b) => {
                    let a = integer(&self.eval_term(a, scope)?, "range start")?;
                    let b = integer(&self.eval_term(b, scope)?, "range end")?;
                    if let Ragged::List(xs) = int_list(lst(a, b)) {
                        out.extend(xs);
                    }
                }
                ListItem::Slice(a, b) => {
                    let a = integer(&self.eval_term(a, scope)?, "slice start")?;
                    let b = integer(&self.eval_term(b, scope)?, "slice end")?;
                    out.push(int_list(lst(a, b)));
                }
            }
        }
        Ok(Ragged::List(out))
    }

    /// `⟦D⟧`: a definition value.
    pub fn eval_definition(
        &mut self,
        d: &DefinitionAst,
        scope: &Scope<S::Component>,
    ) -> EvalResult<Rc<Definition<S::Component>>> {
        match d {
            DefinitionAst::Var(v) => {
                let names = self.eval_variable(v, scope)?;
                let Ragged::Atom(n) = &names else {
                    return Err(EvalError::new(format!("`{names}` is an array, not a definition")));
                };
                match self.lookup(n, scope) {
                    Some(Ragged::Atom(Value::Definition(d))) => Ok(d),
                    Some(other) => Err(EvalError::new(format!(
                        "`{n}` is {}, not a definition",
                        describe_binding(&other)
                    ))),
                    None => Err(EvalError::new(format!("unknown definition `{n}`"))),
                }
            }
            DefinitionAst::Lit(lit) => Ok(Rc::new(Definition {
                lit: lit.clone(),
                scope: scope.clone(),
                name: None,
                span: lit.span,
            })),
        }
    }

    /// `⟦C⟧`.
    pub fn eval_component(
        &mut self,
        c: &ComponentAst,
        scope: &Scope<S::Component>,
    ) -> EvalResult<S::Component> {
        match c {
            ComponentAst::Var(v) => {
                let names = self.eval_variable(v, scope)?;
                let Ragged::Atom(n) = &names else {
                    return Err(EvalError::new(format!("`{names}` is an array, not a component")));
                };
                match self.lookup(n, scope) {
                    Some(Ragged::Atom(Value::Component(c))) => Ok((*c).clone()),
                    Some(other) => Err(EvalError::new(format!(
                        "`{n}` is {}, not a component instance",
                        describe_binding(&other)
                    ))),
                    None => Err(EvalError::new(format!("unbound variable `{n}`"))),
                }
            }
            ComponentAst::Atoms(atoms) => {
                let ctx = self.frames.last().cloned().ok_or_else(|| {
                    EvalError::new("primitive atoms may only appear in a definition body")
                })?;
                self.sort.from_atoms(atoms, &ctx).map_err(sort_error)
            }
            ComponentAst::Composition(parts) => {
                let mut acc = self.sort.trivial();
                for p in parts {
                    let c = self.eval_component(p, scope)?;
                    acc = self.sort.compose(&acc, &c).map_err(sort_error)?;
                }
                Ok(acc)
            }
            ComponentAst::Comprehension { body, predicate } => {
                let solutions = match self.solve(predicate, scope)? {
                    super::Solutions::Finite(s) => s,
                    super::Solutions::Infinite => {
                        self.warn("unbounded comprehension treated as trivial component");
                        Vec::new()
                    }
                };
                let mut acc = self.sort.trivial();
                for s in &solutions {
                    for part in body {
                        let c = self.eval_component(part, s)?;
                        acc = self.sort.compose(&acc, &c).map_err(sort_error)?;
                    }
                }
                Ok(acc)
            }
            ComponentAst::Instantiation {
                definition,
                values,
                arguments,
            } => {
                let d = self.eval_definition(definition, scope)?;
                let t = Ragged::List(
                    values
                        .iter()
                        .map(|v| self.eval_term(v, scope))
                        .collect::<EvalResult<_>>()?,
                );
                let q = self.eval_arguments(arguments, scope)?;
                self.apply_definition(&d, &t, &q)
            }
            ComponentAst::For { .. } | ComponentAst::If { .. } => Err(EvalError::new(
                "internal: `for`/`if` must be desugared before evaluation",
            )),
        }
    }

    /// `⟦D⟧(σ)(t, q)`.
    pub fn apply_definition(
        &mut self,
        d: &Rc<Definition<S::Component>>,
        t: &Val<S::Component>,
        q: &Ragged<Name>,
    ) -> EvalResult<S::Component> {
        let frame = || format!("instantiation of `{}`", d.label());
        self.apply_inner(d, t, q).map_err(|e| {
            let e = match d.span {
                Some(s) => e.at(s),
                None => e,
            };
            e.context(frame())
        })
    }

    fn apply_inner(
        &mut self,
        d: &Rc<Definition<S::Component>>,
        t: &Val<S::Component>,
        q: &Ragged<Name>,
    ) -> EvalResult<S::Component> {
        if self.depth >= self.options.max_depth {
            return Err(EvalError::new(format!(
                "instantiation depth limit of {} exceeded (runaway recursion?)",
                self.options.max_depth
            )));
        }
        let t_items: Vec<Val<S::Component>> = t.as_list().map(|x| x.to_vec()).unwrap_or_default();
        let q_items: Vec<Ragged<Name>> = q.as_list().map(|x| x.to_vec()).unwrap_or_default();
        let index = self.index_scope(d, &t_items, &q_items)?;

        let mut base = d.scope.clone();
        if let Some(name) = &d.name {
            let n = Name::new(name.clone());
            if self.options.recursion && !base.contains(&n) {
                base = base.with(n, Ragged::Atom(Value::Definition(d.clone())));
            }
        }
        let mut params = Vec::new();
        for (s, v) in index.params.iter().zip(&t_items) {
            bind_params(s, v, &mut params);
        }
        let param_scope: Scope<S::Component> = params.iter().cloned().collect();
        let body_scope = base.compose(&index.sigma).compose(&param_scope);

        let mut ports = Vec::new();
        for (p, node) in index.nodes.iter().zip(&d.lit.nodes) {
            for n in p.flatten() {
                ports.push((n.clone(), node.marker));
            }
        }
        let mut data = Vec::new();
        for v in t.flatten() {
            data.push(v.to_datum().unwrap_or_else(|| Datum::Opaque(v.kind().to_string())));
        }
        self.frames.push(AtomContext {
            definition: d.label().to_string(),
            ports,
            params: data,
            span: d.span,
        });
        self.depth += 1;
        self.max_depth_seen = self.max_depth_seen.max(self.depth);
        let body = self.eval_component(&d.lit.body, &body_scope);
        self.depth -= 1;
        self.frames.pop();
        let body = body?;

        // r: formals to actuals, parameters to values, everything else fresh.
        let mut formals: Vec<(Name, Replacement)> = Vec::new();
        for (p, a) in index.nodes.iter().zip(&q_items) {
            for (f, x) in p.flatten().into_iter().zip(a.flatten()) {
                formals.push((f.clone(), Replacement::Name(x.clone())));
            }
        }
        for (name, value) in &params {
            if let Some(datum) = value.as_atom().and_then(Value::to_datum) {
                formals.push((name.clone(), Replacement::Value(datum)));
            }
        }
        let support = self.sort.support(&body);
        let mut map = Substitution::new();
        for x in &support {
            let target = match best_prefix(x, &formals) {
                Some((rest, Replacement::Name(actual))) => {
                    let mut n = actual.clone();
                    n.subs.extend_from_slice(rest);
                    Replacement::Name(n)
                }
                Some((_, Replacement::Value(v))) => Replacement::Value(v.clone()),
                None if x.is_fresh() => continue,
                None => Replacement::Name(self.fresh.fresh(x, &support)),
            };
            if target != Replacement::Name(x.clone()) {
                map.insert(x.clone(), target);
            }
        }
        Ok(if map.is_empty() {
            body
        } else {
            self.sort.substitute_all(&body, &map)
        })
    }
}

/// The formal with the longest match for `x`, and the subscripts left over.
fn best_prefix<'a, 'b>(
    x: &'a Name,
    formals: &'b [(Name, Replacement)],
) -> Option<(&'a [u64], &'b Replacement)> {
    formals
        .iter()
        .filter_map(|(f, r)| x.strip_prefix(f).map(|rest| (rest, r)))
        .min_by_key(|(rest, _)| rest.len())
}

/// Pairs every declared parameter name with the matching part of the value.
fn bind_params<C>(s: &Ragged<Name>, v: &Val<C>, out: &mut Vec<(Name, Val<C>)>) {
    match (s, v) {
        (Ragged::Atom(n), v) => out.push((n.clone(), v.clone())),
        (Ragged::List(ns), Ragged::List(vs)) => {
            for (n, v) in ns.iter().zip(vs) {
                bind_params(n, v, out);
            }
        }
        _ => {}
    }
}

pub(super) fn describe_binding<C>(v: &Val<C>) -> String {
    match v {
        Ragged::Atom(v) => format!("a {}", v.kind()),
        Ragged::List(_) => "an array".to_string(),
    }
}
