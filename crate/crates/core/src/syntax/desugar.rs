//! Rewrites `for` loops and `if` chains into set-comprehensions.

use std::rc::Rc;

use super::ast::*;

pub fn desugar_file(file: &SourceFileAst) -> SourceFileAst {
    SourceFileAst {
        section: file.section.clone(),
        imports: file.imports.clone(),
        assignments: file
            .assignments
            .iter()
            .map(|a| Assignment {
                name: a.name.clone(),
                definition: desugar_definition(&a.definition),
                span: a.span,
            })
            .collect(),
    }
}

pub fn desugar(c: &ComponentAst) -> ComponentAst {
    match c {
        ComponentAst::Var(v) => ComponentAst::Var(desugar_var(v)),
        ComponentAst::Atoms(a) => ComponentAst::Atoms(a.clone()),
        ComponentAst::Composition(cs) => ComponentAst::Composition(cs.iter().map(desugar).collect()),
        ComponentAst::Comprehension { body, predicate } => ComponentAst::Comprehension {
            body: body.iter().map(desugar).collect(),
            predicate: desugar_pred(predicate),
        },
        ComponentAst::Instantiation {
            definition,
            values,
            arguments,
        } => ComponentAst::Instantiation {
            definition: desugar_definition(definition),
            values: values.iter().map(desugar_term).collect(),
            arguments: arguments.iter().map(desugar_var).collect(),
        },
        ComponentAst::For { var, list, body } => ComponentAst::Comprehension {
            body: vec![desugar(body)],
            predicate: PredicateAst::Member(
                VariableAst::simple(var),
                TermAst::List(desugar_list(list)),
            ),
        },
        ComponentAst::If {
            branches,
            otherwise,
        } => {
            let mut pieces = Vec::new();
            // conjunction of the negations of all earlier guards
            let mut earlier: Option<PredicateAst> = None;
            let negated = |p: &PredicateAst| PredicateAst::not(p.clone());
            for (guard, body) in branches {
                let guard = desugar_pred(guard);
                let predicate = match &earlier {
                    None => guard.clone(),
                    Some(e) => PredicateAst::and(e.clone(), guard.clone()),
                };
                pieces.push(ComponentAst::Comprehension {
                    body: vec![desugar(body)],
                    predicate,
                });
                earlier = Some(match earlier {
                    None => negated(&guard),
                    Some(e) => PredicateAst::and(e, negated(&guard)),
                });
            }
            if let Some(body) = otherwise {
                pieces.push(ComponentAst::Comprehension {
                    body: vec![desugar(body)],
                    predicate: earlier.unwrap_or(PredicateAst::True),
                });
            }
            if pieces.len() == 1 {
                pieces.pop().unwrap()
            } else {
                ComponentAst::Composition(pieces)
            }
        }
    }
}

fn desugar_definition(d: &DefinitionAst) -> DefinitionAst {
    match d {
        DefinitionAst::Var(v) => DefinitionAst::Var(desugar_var(v)),
        DefinitionAst::Lit(lit) => DefinitionAst::Lit(Rc::new(DefinitionLit {
            params: lit.params.iter().map(desugar_var).collect(),
            nodes: lit
                .nodes
                .iter()
                .map(|n| NodeAst {
                    var: desugar_var(&n.var),
                    marker: n.marker,
                    type_tag: n.type_tag.clone(),
                })
                .collect(),
            body: desugar(&lit.body),
            span: lit.span,
        })),
    }
}

fn desugar_var(v: &VariableAst) -> VariableAst {
    VariableAst {
        name: v.name.clone(),
        indices: v.indices.iter().map(desugar_list).collect(),
    }
}

fn desugar_list(l: &ListAst) -> ListAst {
    ListAst(
        l.0.iter()
            .map(|item| match item {
                ListItem::Term(t) => ListItem::Term(desugar_term(t)),
                ListItem::Range(a, b) => ListItem::Range(desugar_term(a), desugar_term(b)),
                ListItem::Slice(a, b) => ListItem::Slice(desugar_term(a), desugar_term(b)),
            })
            .collect(),
    )
}

fn desugar_term(t: &TermAst) -> TermAst {
    let b = |t: &TermAst| Box::new(desugar_term(t));
    match t {
        TermAst::Var(v) => TermAst::Var(desugar_var(v)),
        TermAst::Nat(_) | TermAst::Dec(_) | TermAst::Bool(_) | TermAst::Str(_) => t.clone(),
        TermAst::Component(c) => TermAst::Component(Box::new(desugar(c))),
        TermAst::Definition(d) => TermAst::Definition(Box::new(desugar_definition(d))),
        TermAst::List(l) => TermAst::List(desugar_list(l)),
        TermAst::Slice(x, y) => TermAst::Slice(b(x), b(y)),
        TermAst::Index(x, l) => TermAst::Index(b(x), desugar_list(l)),
        TermAst::Len(x) => TermAst::Len(b(x)),
        TermAst::Neg(x) => TermAst::Neg(b(x)),
        TermAst::Binary(op, x, y) => TermAst::Binary(*op, b(x), b(y)),
    }
}

fn desugar_pred(p: &PredicateAst) -> PredicateAst {
    let b = |p: &PredicateAst| Box::new(desugar_pred(p));
    match p {
        PredicateAst::True | PredicateAst::False => p.clone(),
        PredicateAst::Member(v, t) => PredicateAst::Member(desugar_var(v), desugar_term(t)),
        PredicateAst::Rel(op, x, y) => PredicateAst::Rel(*op, desugar_term(x), desugar_term(y)),
        PredicateAst::Holds(v) => PredicateAst::Holds(desugar_var(v)),
        PredicateAst::Not(x) => PredicateAst::Not(b(x)),
        PredicateAst::And(x, y) => PredicateAst::And(b(x), b(y)),
        PredicateAst::Or(x, y) => PredicateAst::Or(b(x), b(y)),
        PredicateAst::Implies(x, y) => PredicateAst::Implies(b(x), b(y)),
        PredicateAst::Quantified {
            quantifier,
            var,
            list,
            body,
        } => PredicateAst::Quantified {
            quantifier: *quantifier,
            var: var.clone(),
            list: desugar_list(list),
            body: b(body),
        },
    }
}
