//! Files and imports.

use std::path::{Path, PathBuf};
use std::rc::Rc;

use super::engine::Evaluator;
use super::{stdlib, Definition};
use crate::sorts::SemanticSort;
use crate::syntax::{
    self, ComponentAst, DefinitionAst, DefinitionLit, DottedName, ListAst, ListItem, PredicateAst,
    SourceFileAst, TermAst, VariableAst,
};
use crate::values::{ErrorClass, EvalError, EvalResult, Name, Ragged, Scope, Value};

impl<'s, S: SemanticSort> Evaluator<'s, S> {
    /// `⟦K⟧`: imports first, then each assignment in order.
    pub fn eval_file(
        &mut self,
        file: &SourceFileAst,
        initial: &Scope<S::Component>,
    ) -> EvalResult<Scope<S::Component>> {
        let mut scope = initial.clone();
        for imp in &file.imports {
            let module = self.import(imp)?;
            scope = scope.compose(&module);
        }
        for a in &file.assignments {
            let name = Name::new(a.name.clone());
            let d = match &a.definition {
                DefinitionAst::Var(_) => self.eval_definition(&a.definition, &scope),
                DefinitionAst::Lit(lit) => {
                    if !self.options.recursion && !scope.contains(&name) && mentions(lit, &a.name) {
                        Err(EvalError::new(format!(
                            "recursion rejected (strict semantics): `{}` refers to itself",
                            a.name
                        )))
                    } else {
                        Ok(Rc::new(Definition {
                            lit: lit.clone(),
                            scope: scope.clone(),
                            name: Some(a.name.clone()),
                            span: lit.span.or(a.span),
                        }))
                    }
                }
            };
            let d = d.map_err(|e| {
                let e = match a.span {
                    Some(s) => e.at(s),
                    None => e,
                };
                e.context(format!("definition of `{}`", a.name))
            })?;
            scope = scope.with(name, Ragged::Atom(Value::Definition(d)));
        }
        Ok(scope)
    }

    /// Parses, desugars and evaluates source text.
    pub fn eval_source(
        &mut self,
        source: &str,
        initial: &Scope<S::Component>,
    ) -> EvalResult<Scope<S::Component>> {
        let ast = syntax::parse_source(source).map_err(|e| {
            EvalError::new(e.to_string())
                .at(e.span())
                .with_class(ErrorClass::Syntax)
        })?;
        self.eval_file(&syntax::desugar_file(&ast), initial)
    }

    /// `⟦I⟧`: the definitions of the imported module.
    pub fn import(&mut self, module: &DottedName) -> EvalResult<Scope<S::Component>> {
        let rel = format!("{}.treo", module.0.join("/"));
        let (key, source) = self.locate(module, &rel)?;
        if let Some(pos) = self.loading.iter().position(|k| *k == key) {
            let mut cycle: Vec<String> = self.loading[pos..].to_vec();
            cycle.push(key);
            return Err(EvalError::new(format!("import cycle: {}", cycle.join(" -> "))));
        }
        if let Some(s) = self.modules.get(&key) {
            return Ok(s.clone());
        }
        self.loading.push(key.clone());
        let result = self.eval_module(&source);
        self.loading.pop();
        let scope = result.map_err(|e| e.context(format!("module `{}` ({key})", module.joined())))?;
        self.modules.insert(key, scope.clone());
        Ok(scope)
    }

    fn eval_module(&mut self, source: &str) -> EvalResult<Scope<S::Component>> {
        let ast = syntax::parse_source(source).map_err(|e| {
            EvalError::new(e.to_string())
                .at(e.span())
                .with_class(ErrorClass::Syntax)
        })?;
        let ast = syntax::desugar_file(&ast);
        let full = self.eval_file(&ast, &Scope::new())?;
        // only the module's own definitions are exported
        Ok(ast
            .assignments
            .iter()
            .filter_map(|a| {
                let n = Name::new(a.name.clone());
                full.get(&n).map(|v| (n, v.clone()))
            })
            .collect())
    }

    /// Finds a module: bundled library first, then the search paths.
    fn locate(&self, module: &DottedName, rel: &str) -> EvalResult<(String, String)> {
        if let Some(src) = stdlib::lookup(rel) {
            return Ok((format!("stdlib:{rel}"), src.to_string()));
        }
        for dir in &self.search_paths {
            let path = dir.join(rel);
            if path.is_file() {
                let source = std::fs::read_to_string(&path).map_err(|e| {
                    EvalError::new(format!("cannot read {}: {e}", path.display()))
                        .with_class(ErrorClass::Io)
                })?;
                let key = canonical(&path);
                return Ok((key, source));
            }
        }
        let searched: Vec<String> = std::iter::once("<stdlib>".to_string())
            .chain(self.search_paths.iter().map(|p| p.display().to_string()))
            .collect();
        Err(EvalError::new(format!(
            "module `{}` not found (searched {})",
            module.joined(),
            searched.join(", ")
        )))
    }
}

fn canonical(p: &Path) -> String {
    std::fs::canonicalize(p)
        .unwrap_or_else(|_| PathBuf::from(p))
        .display()
        .to_string()
}

/// Whether the definition's body mentions `name` anywhere.
pub fn mentions(lit: &DefinitionLit, name: &str) -> bool {
    lit.params.iter().any(|v| var_mentions(v, name))
        || lit.nodes.iter().any(|n| var_mentions(&n.var, name))
        || comp_mentions(&lit.body, name)
}

fn var_mentions(v: &VariableAst, name: &str) -> bool {
    (v.name.0.len() == 1 && v.name.0[0] == name) || v.indices.iter().any(|l| list_mentions(l, name))
}

fn list_mentions(l: &ListAst, name: &str) -> bool {
    l.0.iter().any(|i| match i {
        ListItem::Term(t) => term_mentions(t, name),
        ListItem::Range(a, b) | ListItem::Slice(a, b) => {
            term_mentions(a, name) || term_mentions(b, name)
        }
    })
}

fn def_mentions(d: &DefinitionAst, name: &str) -> bool {
    match d {
        DefinitionAst::Var(v) => var_mentions(v, name),
        DefinitionAst::Lit(lit) => mentions(lit, name),
    }
}

fn term_mentions(t: &TermAst, name: &str) -> bool {
    match t {
        TermAst::Var(v) => var_mentions(v, name),
        TermAst::Nat(_) | TermAst::Dec(_) | TermAst::Bool(_) | TermAst::Str(_) => false,
        TermAst::Component(c) => comp_mentions(c, name),
        TermAst::Definition(d) => def_mentions(d, name),
        TermAst::List(l) => list_mentions(l, name),
        TermAst::Slice(a, b) | TermAst::Binary(_, a, b) => {
            term_mentions(a, name) || term_mentions(b, name)
        }
        TermAst::Index(x, l) => term_mentions(x, name) || list_mentions(l, name),
        TermAst::Len(x) | TermAst::Neg(x) => term_mentions(x, name),
    }
}

fn pred_mentions(p: &PredicateAst, name: &str) -> bool {
    match p {
        PredicateAst::True | PredicateAst::False => false,
        PredicateAst::Member(v, t) => var_mentions(v, name) || term_mentions(t, name),
        PredicateAst::Rel(_, a, b) => term_mentions(a, name) || term_mentions(b, name),
        PredicateAst::Holds(v) => var_mentions(v, name),
        PredicateAst::Not(x) => pred_mentions(x, name),
        PredicateAst::And(a, b) | PredicateAst::Or(a, b) | PredicateAst::Implies(a, b) => {
            pred_mentions(a, name) || pred_mentions(b, name)
        }
        PredicateAst::Quantified { list, body, .. } => {
            list_mentions(list, name) || pred_mentions(body, name)
        }
    }
}

fn comp_mentions(c: &ComponentAst, name: &str) -> bool {
    match c {
        ComponentAst::Var(v) => var_mentions(v, name),
        ComponentAst::Atoms(_) => false,
        ComponentAst::Composition(cs) => cs.iter().any(|c| comp_mentions(c, name)),
        ComponentAst::Comprehension { body, predicate } => {
            body.iter().any(|c| comp_mentions(c, name)) || pred_mentions(predicate, name)
        }
        ComponentAst::Instantiation {
            definition,
            values,
            arguments,
        } => {
            def_mentions(definition, name)
                || values.iter().any(|t| term_mentions(t, name))
                || arguments.iter().any(|v| var_mentions(v, name))
        }
        ComponentAst::For { list, body, .. } => list_mentions(list, name) || comp_mentions(body, name),
        ComponentAst::If {
            branches,
            otherwise,
        } => {
            branches
                .iter()
                .any(|(p, c)| pred_mentions(p, name) || comp_mentions(c, name))
                || otherwise.as_ref().is_some_and(|c| comp_mentions(c, name))
        }
    }
}
