//! Source printer. Output reparses to the same tree.

use std::fmt::Write;

use super::ast::*;

pub fn pretty_print(file: &SourceFileAst) -> String {
    let mut out = String::new();
    if let Some(sec) = &file.section {
        let _ = writeln!(out, "section {};", sec.joined());
    }
    for imp in &file.imports {
        let _ = writeln!(out, "import {};", imp.joined());
    }
    for a in &file.assignments {
        out.push_str(&a.name);
        match &a.definition {
            DefinitionAst::Var(v) => {
                out.push(' ');
                var(&mut out, v);
            }
            DefinitionAst::Lit(lit) => definition_lit(&mut out, lit),
        }
        out.push('\n');
    }
    out
}

pub fn component_to_string(c: &ComponentAst) -> String {
    let mut out = String::new();
    component(&mut out, c);
    out
}

pub fn term_to_string(t: &TermAst) -> String {
    let mut out = String::new();
    term(&mut out, t, 0);
    out
}

pub fn predicate_to_string(p: &PredicateAst) -> String {
    let mut out = String::new();
    predicate(&mut out, p, 0);
    out
}

pub fn variable_to_string(v: &VariableAst) -> String {
    let mut out = String::new();
    var(&mut out, v);
    out
}

fn var(out: &mut String, v: &VariableAst) {
    out.push_str(&v.name.joined());
    for l in &v.indices {
        list(out, l);
    }
}

fn comma_sep<T>(out: &mut String, items: &[T], mut f: impl FnMut(&mut String, &T)) {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        f(out, item);
    }
}

fn definition_lit(out: &mut String, lit: &DefinitionLit) {
    if !lit.params.is_empty() {
        out.push('<');
        comma_sep(out, &lit.params, var);
        out.push('>');
    }
    out.push('(');
    comma_sep(out, &lit.nodes, |out, n| {
        var(out, &n.var);
        if let Some(m) = n.marker {
            out.push_str(m.symbol());
            if let Some(tag) = &n.type_tag {
                out.push(' ');
                out.push_str(tag);
            }
        }
    });
    out.push_str(") ");
    component(out, &lit.body);
}

fn definition(out: &mut String, d: &DefinitionAst) {
    match d {
        DefinitionAst::Var(v) => var(out, v),
        DefinitionAst::Lit(lit) => definition_lit(out, lit),
    }
}

fn component(out: &mut String, c: &ComponentAst) {
    match c {
        ComponentAst::Var(v) => var(out, v),
        ComponentAst::Atoms(atoms) => {
            out.push_str("{ ");
            for a in atoms {
                match a {
                    AtomAst::Opaque(s) => {
                        let _ = write!(out, "\"{s}\" ");
                    }
                    AtomAst::Automaton(ca) => ca_atom(out, ca),
                }
            }
            out.push('}');
        }
        ComponentAst::Composition(cs) => {
            out.push_str("{ ");
            for c in cs {
                component(out, c);
                out.push(' ');
            }
            out.push('}');
        }
        ComponentAst::Comprehension { body, predicate: p } => {
            out.push_str("{ ");
            for c in body {
                component(out, c);
                out.push(' ');
            }
            out.push_str("| ");
            predicate(out, p, 0);
            out.push_str(" }");
        }
        ComponentAst::Instantiation {
            definition: d,
            values,
            arguments,
        } => {
            definition(out, d);
            if !values.is_empty() {
                out.push('<');
                comma_sep(out, values, |out, t| term(out, t, 0));
                out.push('>');
            }
            out.push('(');
            comma_sep(out, arguments, var);
            out.push(')');
        }
        ComponentAst::For { var: v, list: l, body } => {
            let _ = write!(out, "for ({v} in ");
            list(out, l);
            out.push_str(") ");
            component(out, body);
        }
        ComponentAst::If {
            branches,
            otherwise,
        } => {
            for (i, (p, c)) in branches.iter().enumerate() {
                out.push_str(if i == 0 { "if (" } else { " else (" });
                predicate(out, p, 0);
                out.push_str(") ");
                component(out, c);
            }
            if let Some(c) = otherwise {
                out.push_str(" else ");
                component(out, c);
            }
        }
    }
}

fn ca_atom(out: &mut String, ca: &CaAtom) {
    if let Some(s) = &ca.start {
        let _ = write!(out, "start {s}; ");
    }
    for t in &ca.transitions {
        let _ = write!(out, "{} -{{{}}}, ", t.source, t.sync.join(","));
        if t.guard.is_empty() {
            out.push_str("true");
        } else {
            comma_sep(out, &t.guard, |out, (l, r)| {
                guard_term(out, l);
                out.push_str(" = ");
                guard_term(out, r);
            });
        }
        let _ = write!(out, " -> {}; ", t.target);
    }
}

fn guard_term(out: &mut String, g: &GuardTermAst) {
    match g {
        GuardTermAst::Name(n) => out.push_str(n),
        GuardTermAst::Primed(n) => {
            let _ = write!(out, "{n}'");
        }
        GuardTermAst::Int(i) => {
            let _ = write!(out, "{i}");
        }
        GuardTermAst::Text(s) => {
            let _ = write!(out, "\"{s}\"");
        }
        GuardTermAst::Bool(b) => {
            let _ = write!(out, "{b}");
        }
    }
}

fn list(out: &mut String, l: &ListAst) {
    out.push('[');
    comma_sep(out, &l.0, |out, item| match item {
        ListItem::Term(t) => term(out, t, 0),
        ListItem::Range(a, b) => {
            term(out, a, 0);
            out.push_str("..");
            term(out, b, 0);
        }
        ListItem::Slice(a, b) => {
            term(out, a, 0);
            out.push(':');
            term(out, b, 0);
        }
    });
    out.push(']');
}

fn term_level(t: &TermAst) -> u8 {
    match t {
        TermAst::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => 0,
        TermAst::Binary(BinaryOp::Mul | BinaryOp::Div | BinaryOp::Rem, ..) => 1,
        TermAst::Neg(_) => 2,
        TermAst::Binary(BinaryOp::Pow, ..) => 3,
        _ => 4,
    }
}

fn decimal(out: &mut String, d: f64) {
    let s = format!("{d:?}");
    if s.contains('e') {
        let fixed = format!("{d:.30}");
        let trimmed = fixed.trim_end_matches('0');
        let trimmed = if trimmed.ends_with('.') {
            format!("{trimmed}0")
        } else {
            trimmed.to_string()
        };
        out.push_str(&trimmed);
    } else {
        out.push_str(&s);
    }
}

fn term(out: &mut String, t: &TermAst, min: u8) {
    let level = term_level(t);
    let paren = level < min;
    if paren {
        out.push('(');
    }
    match t {
        TermAst::Var(v) => var(out, v),
        TermAst::Nat(n) => {
            let _ = write!(out, "{n}");
        }
        TermAst::Dec(d) => decimal(out, *d),
        TermAst::Bool(b) => {
            let _ = write!(out, "{b}");
        }
        TermAst::Str(s) => {
            let _ = write!(out, "\"{s}\"");
        }
        TermAst::Component(c) => component(out, c),
        TermAst::Definition(d) => definition(out, d),
        TermAst::List(l) => list(out, l),
        TermAst::Slice(a, b) => {
            out.push('(');
            term(out, a, 0);
            out.push(':');
            term(out, b, 0);
            out.push(')');
        }
        TermAst::Index(inner, l) => {
            if matches!(**inner, TermAst::Var(_)) {
                out.push('(');
                term(out, inner, 0);
                out.push(')');
            } else {
                term(out, inner, 4);
            }
            list(out, l);
        }
        TermAst::Len(inner) => {
            out.push_str("len(");
            term(out, inner, 0);
            out.push(')');
        }
        TermAst::Neg(inner) => {
            out.push('-');
            term(out, inner, 2);
        }
        TermAst::Binary(op, a, b) => {
            let (lmin, rmin) = match op {
                BinaryOp::Pow => (4, 2),
                _ => (level, level + 1),
            };
            term(out, a, lmin);
            let _ = write!(out, " {} ", op.symbol());
            term(out, b, rmin);
        }
    }
    if paren {
        out.push(')');
    }
}

fn pred_level(p: &PredicateAst) -> u8 {
    match p {
        PredicateAst::Quantified { .. } => 0,
        PredicateAst::Implies(..) => 1,
        PredicateAst::Or(..) => 2,
        PredicateAst::And(..) => 3,
        PredicateAst::Not(_) => 4,
        _ => 5,
    }
}

fn predicate(out: &mut String, p: &PredicateAst, min: u8) {
    let level = pred_level(p);
    // a quantifier body extends as far right as possible
    let paren = level < min || (level == 0 && min > 0);
    if paren {
        out.push('(');
    }
    match p {
        PredicateAst::True => out.push_str("true"),
        PredicateAst::False => out.push_str("false"),
        PredicateAst::Member(v, t) => {
            var(out, v);
            out.push_str(" in ");
            term(out, t, 0);
        }
        PredicateAst::Rel(op, a, b) => {
            term(out, a, 0);
            let _ = write!(out, " {} ", op.symbol());
            term(out, b, 0);
        }
        PredicateAst::Holds(v) => var(out, v),
        PredicateAst::Not(inner) => {
            out.push_str("not ");
            predicate(out, inner, 4);
        }
        PredicateAst::And(a, b) => {
            predicate(out, a, 3);
            out.push_str(" and ");
            predicate(out, b, 4);
        }
        PredicateAst::Or(a, b) => {
            predicate(out, a, 2);
            out.push_str(" or ");
            predicate(out, b, 3);
        }
        PredicateAst::Implies(a, b) => {
            predicate(out, a, 2);
            out.push_str(" implies ");
            predicate(out, b, 0);
        }
        PredicateAst::Quantified {
            quantifier,
            var: v,
            list: l,
            body,
        } => {
            out.push_str(match quantifier {
                Quantifier::Forall => "forall ",
                Quantifier::Exists => "exists ",
            });
            let _ = write!(out, "{v} in ");
            list(out, l);
            out.push_str(" : ");
            predicate(out, body, 0);
        }
    }
    if paren {
        out.push(')');
    }
}
