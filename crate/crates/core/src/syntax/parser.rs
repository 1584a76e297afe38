use std::fmt;
use std::rc::Rc;

use super::ast::*;
use super::token::{Span, Token, TokenKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub expected: Vec<String>,
    pub found: String,
    pub span: Span,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected ", self.span)?;
        match self.expected.as_slice() {
            [] => write!(f, "something else")?,
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

/// Parses a whole token stream as a source file.
pub fn parse_file(tokens: &[Token]) -> Result<SourceFileAst, ParseError> {
    let mut p = Parser::new(tokens);
    p.file().map_err(|e| p.best_error(e))
}

/// Parses a standalone component, e.g. a definition body.
pub fn parse_component(tokens: &[Token]) -> Result<ComponentAst, ParseError> {
    let mut p = Parser::new(tokens);
    let res = p.component().and_then(|c| p.expect_eof().map(|_| c));
    res.map_err(|e| p.best_error(e))
}

pub fn parse_predicate(tokens: &[Token]) -> Result<PredicateAst, ParseError> {
    let mut p = Parser::new(tokens);
    let res = p.predicate().and_then(|c| p.expect_eof().map(|_| c));
    res.map_err(|e| p.best_error(e))
}

pub fn parse_term(tokens: &[Token]) -> Result<TermAst, ParseError> {
    let mut p = Parser::new(tokens);
    let res = p.term_or_slice().and_then(|c| p.expect_eof().map(|_| c));
    res.map_err(|e| p.best_error(e))
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    furthest: Option<ParseError>,
}

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token]) -> Self {
        Parser {
            tokens,
            pos: 0,
            furthest: None,
        }
    }

    // ---- token helpers ----

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, n: usize) -> Option<&'t Token> {
        self.tokens.get(self.pos + n)
    }

    fn at_punct(&self, p: &str) -> bool {
        self.peek().is_some_and(|t| t.is_punct(p))
    }

    fn at_punct_n(&self, n: usize, p: &str) -> bool {
        self.peek_at(n).is_some_and(|t| t.is_punct(p))
    }

    fn at_keyword(&self, k: &str) -> bool {
        self.peek().is_some_and(|t| t.is_keyword(k))
    }

    fn at_kind(&self, kind: TokenKind) -> bool {
        self.peek().is_some_and(|t| t.kind == kind)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.at_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, k: &str) -> bool {
        if self.at_keyword(k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&mut self, expected: &[&str]) -> ParseError {
        let (found, span) = match self.peek() {
            Some(t) => (t.to_string(), t.span),
            None => {
                let span = self
                    .tokens
                    .last()
                    .map(|t| Span {
                        offset: t.span.end(),
                        line: t.span.line,
                        column: t.span.column + t.lexeme.chars().count(),
                        len: 0,
                    })
                    .unwrap_or(Span {
                        offset: 0,
                        line: 1,
                        column: 1,
                        len: 0,
                    });
                ("end of input".to_string(), span)
            }
        };
        let err = ParseError {
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
            span,
        };
        let further = match &self.furthest {
            None => true,
            Some(f) => err.span.offset > f.span.offset,
        };
        if further {
            self.furthest = Some(err.clone());
        } else if let Some(f) = &mut self.furthest {
            if f.span.offset == err.span.offset {
                for e in &err.expected {
                    if !f.expected.contains(e) {
                        f.expected.push(e.clone());
                    }
                }
            }
        }
        err
    }

    fn best_error(&self, e: ParseError) -> ParseError {
        match &self.furthest {
            Some(f) if f.span.offset >= e.span.offset => f.clone(),
            _ => e,
        }
    }

    fn expect_punct(&mut self, p: &str) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{p}`")]))
        }
    }

    fn expect_keyword(&mut self, k: &str) -> PResult<()> {
        if self.eat_keyword(k) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{k}`")]))
        }
    }

    fn expect_ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => {
                self.pos += 1;
                Ok(t.lexeme.clone())
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn expect_eof(&mut self) -> PResult<()> {
        if self.peek().is_none() {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    /// Runs `f`; on failure rewinds to where it started.
    fn attempt<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> Option<T> {
        let start = self.pos;
        match f(self) {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = start;
                None
            }
        }
    }

    // ---- file level ----

    fn file(&mut self) -> PResult<SourceFileAst> {
        let mut file = SourceFileAst::default();
        if self.eat_keyword("section") {
            file.section = Some(self.dotted_name()?);
            self.expect_punct(";")?;
        }
        while self.eat_keyword("import") {
            file.imports.push(self.dotted_name()?);
            self.expect_punct(";")?;
        }
        while self.at_kind(TokenKind::Identifier) {
            let span = self.peek().map(|t| t.span);
            let name = self.expect_ident()?;
            let definition = self.definition(false)?;
            file.assignments.push(Assignment {
                name,
                definition,
                span,
            });
        }
        if self.peek().is_some() {
            let expected: &[&str] = if file.assignments.is_empty() {
                &["`section`", "`import`", "identifier", "end of input"]
            } else {
                &["identifier", "end of input"]
            };
            return Err(self.error(expected));
        }
        Ok(file)
    }

    fn dotted_name(&mut self) -> PResult<DottedName> {
        let mut parts = vec![self.expect_ident()?];
        while self.at_punct(".") && self.peek_at(1).is_some_and(|t| t.kind == TokenKind::Identifier)
        {
            self.pos += 1;
            parts.push(self.expect_ident()?);
        }
        Ok(DottedName(parts))
    }

    /// `defn : var | params? nodes comp`. The node list may be omitted in
    /// assignments, e.g. `x { "A" }`.
    fn definition(&mut self, require_interface: bool) -> PResult<DefinitionAst> {
        if self.at_kind(TokenKind::Identifier) {
            return Ok(DefinitionAst::Var(self.variable()?));
        }
        if require_interface && !self.at_punct("<") && !self.at_punct("(") {
            return Err(self.error(&["`<`", "`(`"]));
        }
        Ok(DefinitionAst::Lit(Rc::new(self.definition_lit()?)))
    }

    fn definition_lit(&mut self) -> PResult<DefinitionLit> {
        let span = self.peek().map(|t| t.span);
        let params = if self.at_punct("<") {
            self.angle_vars()?
        } else {
            Vec::new()
        };
        let nodes = if self.at_punct("(") {
            self.node_list()?
        } else {
            Vec::new()
        };
        let body = self.component()?;
        Ok(DefinitionLit {
            params,
            nodes,
            body,
            span,
        })
    }

    fn angle_vars(&mut self) -> PResult<Vec<VariableAst>> {
        self.expect_punct("<")?;
        let mut vars = Vec::new();
        if !self.eat_punct(">") {
            loop {
                vars.push(self.variable()?);
                if self.eat_punct(">") {
                    break;
                }
                self.expect_punct(",")?;
            }
        }
        Ok(vars)
    }

    fn node_list(&mut self) -> PResult<Vec<NodeAst>> {
        self.expect_punct("(")?;
        let mut nodes = Vec::new();
        if !self.eat_punct(")") {
            loop {
                nodes.push(self.node()?);
                if self.eat_punct(")") {
                    break;
                }
                self.expect_punct(",")?;
            }
        }
        Ok(nodes)
    }

    fn node(&mut self) -> PResult<NodeAst> {
        let var = self.variable()?;
        let marker = if self.eat_punct("?") {
            Some(IoMarker::Input)
        } else if self.eat_punct("!") {
            Some(IoMarker::Output)
        } else if self.eat_punct(":") {
            Some(IoMarker::Mixed)
        } else {
            None
        };
        let type_tag = if marker.is_some() && self.at_kind(TokenKind::Identifier) {
            Some(self.expect_ident()?)
        } else {
            None
        };
        Ok(NodeAst {
            var,
            marker,
            type_tag,
        })
    }

    fn variable(&mut self) -> PResult<VariableAst> {
        let name = self.dotted_name()?;
        let mut indices = Vec::new();
        while self.at_punct("[") {
            indices.push(self.list()?);
        }
        Ok(VariableAst { name, indices })
    }

    fn arguments(&mut self) -> PResult<Vec<VariableAst>> {
        self.expect_punct("(")?;
        let mut args = Vec::new();
        if !self.eat_punct(")") {
            loop {
                args.push(self.variable()?);
                if self.eat_punct(")") {
                    break;
                }
                self.expect_punct(",")?;
            }
        }
        Ok(args)
    }

    fn values(&mut self) -> PResult<Vec<TermAst>> {
        self.expect_punct("<")?;
        let mut vals = Vec::new();
        if !self.eat_punct(">") {
            loop {
                vals.push(self.term_or_slice()?);
                if self.eat_punct(">") {
                    break;
                }
                self.expect_punct(",")?;
            }
        }
        Ok(vals)
    }

    /// `vals? args` after a definition. Returns `None` when nothing follows.
    fn instantiation_tail(&mut self) -> PResult<Option<(Vec<TermAst>, Vec<VariableAst>)>> {
        if self.at_punct("<") {
            let tail = self.attempt(|p| {
                let vals = p.values()?;
                let args = p.arguments()?;
                Ok((vals, args))
            });
            return Ok(tail);
        }
        if self.at_punct("(") {
            let args = self.arguments()?;
            return Ok(Some((Vec::new(), args)));
        }
        Ok(None)
    }

    // ---- components ----

    fn at_component_start(&self) -> bool {
        match self.peek() {
            None => false,
            Some(t) => {
                t.kind == TokenKind::Identifier
                    || t.is_punct("{")
                    || t.is_punct("(")
                    || t.is_punct("<")
                    || t.is_keyword("for")
                    || t.is_keyword("if")
            }
        }
    }

    fn component(&mut self) -> PResult<ComponentAst> {
        let Some(tok) = self.peek() else {
            return Err(self.error(&["component"]));
        };
        if tok.is_punct("{") {
            return self.block();
        }
        if tok.is_keyword("for") {
            self.pos += 1;
            self.expect_punct("(")?;
            let var = self.expect_ident()?;
            self.expect_keyword("in")?;
            let list = self.list()?;
            self.expect_punct(")")?;
            let body = self.component()?;
            return Ok(ComponentAst::For {
                var,
                list,
                body: Box::new(body),
            });
        }
        if tok.is_keyword("if") {
            return self.if_chain();
        }
        if tok.kind == TokenKind::Identifier {
            let var = self.variable()?;
            return Ok(match self.instantiation_tail()? {
                Some((values, arguments)) => ComponentAst::Instantiation {
                    definition: DefinitionAst::Var(var),
                    values,
                    arguments,
                },
                None => ComponentAst::Var(var),
            });
        }
        if tok.is_punct("(") || tok.is_punct("<") {
            let lit = self.definition_lit()?;
            let (values, arguments) = match self.instantiation_tail()? {
                Some(t) => t,
                None => return Err(self.error(&["`<`", "`(`"])),
            };
            return Ok(ComponentAst::Instantiation {
                definition: DefinitionAst::Lit(Rc::new(lit)),
                values,
                arguments,
            });
        }
        Err(self.error(&["component"]))
    }

    fn if_chain(&mut self) -> PResult<ComponentAst> {
        self.expect_keyword("if")?;
        self.expect_punct("(")?;
        let pred = self.predicate()?;
        self.expect_punct(")")?;
        let first = self.component()?;
        let mut branches = vec![(pred, first)];
        let mut otherwise = None;
        while self.at_keyword("else") {
            self.pos += 1;
            let guarded = self.attempt(|p| {
                p.expect_punct("(")?;
                let pred = p.predicate()?;
                p.expect_punct(")")?;
                let c = p.component()?;
                Ok((pred, c))
            });
            match guarded {
                Some(b) => branches.push(b),
                None => {
                    otherwise = Some(Box::new(self.component()?));
                    break;
                }
            }
        }
        Ok(ComponentAst::If {
            branches,
            otherwise,
        })
    }

    fn at_ca_atom(&self) -> bool {
        let ident = |n: usize| {
            self.peek_at(n)
                .is_some_and(|t| t.kind == TokenKind::Identifier)
        };
        let start_line = ident(0)
            && self.peek().is_some_and(|t| t.lexeme == "start")
            && ident(1)
            && self.at_punct_n(2, ";");
        let transition = ident(0) && self.at_punct_n(1, "-") && self.at_punct_n(2, "{");
        start_line || transition
    }

    fn block(&mut self) -> PResult<ComponentAst> {
        self.expect_punct("{")?;
        if self.at_kind(TokenKind::String) {
            let mut atoms = Vec::new();
            while let Some(t) = self.peek().filter(|t| t.kind == TokenKind::String) {
                atoms.push(AtomAst::Opaque(t.string_value().to_string()));
                self.pos += 1;
            }
            self.expect_punct("}")?;
            return Ok(ComponentAst::Atoms(atoms));
        }
        if self.at_ca_atom() {
            let atom = self.ca_atom()?;
            self.expect_punct("}")?;
            return Ok(ComponentAst::Atoms(vec![AtomAst::Automaton(atom)]));
        }
        let mut body = Vec::new();
        while self.at_component_start() {
            body.push(self.component()?);
        }
        if self.eat_punct("|") {
            let predicate = self.predicate()?;
            self.expect_punct("}")?;
            return Ok(ComponentAst::Comprehension { body, predicate });
        }
        if !self.eat_punct("}") {
            return Err(self.error(&["component", "`|`", "`}`"]));
        }
        Ok(ComponentAst::Composition(body))
    }

    fn ca_atom(&mut self) -> PResult<CaAtom> {
        let mut start = None;
        if self.peek().is_some_and(|t| t.lexeme == "start") && self.at_punct_n(2, ";") {
            self.pos += 1;
            start = Some(self.expect_ident()?);
            self.expect_punct(";")?;
        }
        let mut transitions = Vec::new();
        while self.at_kind(TokenKind::Identifier) {
            let source = self.expect_ident()?;
            self.expect_punct("-")?;
            self.expect_punct("{")?;
            let mut sync = vec![self.expect_ident()?];
            while self.eat_punct(",") {
                sync.push(self.expect_ident()?);
            }
            self.expect_punct("}")?;
            self.expect_punct(",")?;
            let guard = self.guard()?;
            self.expect_punct("->")?;
            let target = self.expect_ident()?;
            transitions.push(CaTransitionAst {
                source,
                sync,
                guard,
                target,
            });
            if !self.eat_punct(";") {
                break;
            }
        }
        if transitions.is_empty() {
            return Err(self.error(&["transition"]));
        }
        Ok(CaAtom { start, transitions })
    }

    fn guard(&mut self) -> PResult<Vec<(GuardTermAst, GuardTermAst)>> {
        if self.peek().is_some_and(|t| t.kind == TokenKind::Boolean && t.lexeme == "true")
            && self.at_punct_n(1, "->")
        {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut eqs = Vec::new();
        loop {
            let lhs = self.guard_term()?;
            self.expect_punct("=")?;
            let rhs = self.guard_term()?;
            eqs.push((lhs, rhs));
            if !self.eat_punct(",") {
                break;
            }
        }
        Ok(eqs)
    }

    fn guard_term(&mut self) -> PResult<GuardTermAst> {
        let Some(t) = self.peek() else {
            return Err(self.error(&["guard term"]));
        };
        let term = match t.kind {
            TokenKind::Identifier => {
                self.pos += 1;
                if self.eat_punct("'") {
                    GuardTermAst::Primed(t.lexeme.clone())
                } else {
                    GuardTermAst::Name(t.lexeme.clone())
                }
            }
            TokenKind::Natural => {
                self.pos += 1;
                GuardTermAst::Int(self.natural_value(t)? as i64)
            }
            TokenKind::String => {
                self.pos += 1;
                GuardTermAst::Text(t.string_value().to_string())
            }
            TokenKind::Boolean => {
                self.pos += 1;
                GuardTermAst::Bool(t.lexeme == "true")
            }
            TokenKind::Punctuation if t.lexeme == "-" => {
                self.pos += 1;
                match self.peek() {
                    Some(n) if n.kind == TokenKind::Natural => {
                        self.pos += 1;
                        GuardTermAst::Int(-(self.natural_value(n)? as i64))
                    }
                    _ => return Err(self.error(&["natural"])),
                }
            }
            _ => return Err(self.error(&["guard term"])),
        };
        Ok(term)
    }

    fn natural_value(&mut self, t: &Token) -> PResult<u64> {
        t.lexeme.parse::<u64>().ok().filter(|v| *v <= i64::MAX as u64).ok_or_else(|| {
            ParseError {
                expected: vec!["natural that fits in 63 bits".into()],
                found: t.to_string(),
                span: t.span,
            }
        })
    }

    // ---- lists and terms ----

    fn list(&mut self) -> PResult<ListAst> {
        self.expect_punct("[")?;
        let mut items = Vec::new();
        if !self.eat_punct("]") {
            loop {
                let t = self.term()?;
                let item = if self.eat_punct("..") {
                    ListItem::Range(t, self.term()?)
                } else if self.eat_punct(":") {
                    ListItem::Slice(t, self.term()?)
                } else {
                    ListItem::Term(t)
                };
                items.push(item);
                if self.eat_punct("]") {
                    break;
                }
                self.expect_punct(",")?;
            }
        }
        Ok(ListAst(items))
    }

    /// A term optionally followed by `: term`, i.e. a half-open slice.
    fn term_or_slice(&mut self) -> PResult<TermAst> {
        let t = self.term()?;
        if self.eat_punct(":") {
            let hi = self.term()?;
            return Ok(TermAst::Slice(Box::new(t), Box::new(hi)));
        }
        Ok(t)
    }

    fn term(&mut self) -> PResult<TermAst> {
        let mut lhs = self.mul_term()?;
        loop {
            let op = if self.at_punct("+") {
                BinaryOp::Add
            } else if self.at_punct("-") && !self.at_punct_n(1, "{") {
                BinaryOp::Sub
            } else {
                break;
            };
            self.pos += 1;
            let rhs = self.mul_term()?;
            lhs = TermAst::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn mul_term(&mut self) -> PResult<TermAst> {
        let mut lhs = self.unary_term()?;
        loop {
            let op = if self.at_punct("*") {
                BinaryOp::Mul
            } else if self.at_punct("/") {
                BinaryOp::Div
            } else if self.at_punct("%") {
                BinaryOp::Rem
            } else {
                break;
            };
            self.pos += 1;
            let rhs = self.unary_term()?;
            lhs = TermAst::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary_term(&mut self) -> PResult<TermAst> {
        if self.eat_punct("-") {
            return Ok(TermAst::Neg(Box::new(self.unary_term()?)));
        }
        self.pow_term()
    }

    fn pow_term(&mut self) -> PResult<TermAst> {
        let base = self.postfix_term()?;
        if self.eat_punct("^") {
            let exp = self.unary_term()?;
            return Ok(TermAst::Binary(BinaryOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn postfix_term(&mut self) -> PResult<TermAst> {
        let mut t = self.primary_term()?;
        while self.at_punct("[") {
            let l = self.list()?;
            t = TermAst::Index(Box::new(t), l);
        }
        Ok(t)
    }

    fn primary_term(&mut self) -> PResult<TermAst> {
        let Some(tok) = self.peek() else {
            return Err(self.error(&["term"]));
        };
        match tok.kind {
            TokenKind::Natural => {
                self.pos += 1;
                return Ok(TermAst::Nat(self.natural_value(tok)?));
            }
            TokenKind::Decimal => {
                self.pos += 1;
                return Ok(TermAst::Dec(tok.lexeme.parse().expect("lexer validated")));
            }
            TokenKind::Boolean => {
                self.pos += 1;
                return Ok(TermAst::Bool(tok.lexeme == "true"));
            }
            TokenKind::String => {
                self.pos += 1;
                return Ok(TermAst::Str(tok.string_value().to_string()));
            }
            TokenKind::Identifier => {
                if tok.lexeme == "len" && self.at_punct_n(1, "(") {
                    self.pos += 2;
                    let inner = self.term()?;
                    self.expect_punct(")")?;
                    return Ok(TermAst::Len(Box::new(inner)));
                }
                let var = self.variable()?;
                return Ok(match self.instantiation_tail()? {
                    Some((values, arguments)) => {
                        TermAst::Component(Box::new(ComponentAst::Instantiation {
                            definition: DefinitionAst::Var(var),
                            values,
                            arguments,
                        }))
                    }
                    None => TermAst::Var(var),
                });
            }
            _ => {}
        }
        if tok.is_punct("[") {
            return Ok(TermAst::List(self.list()?));
        }
        if tok.is_punct("{") || tok.is_keyword("for") || tok.is_keyword("if") {
            return Ok(TermAst::Component(Box::new(self.component()?)));
        }
        if tok.is_punct("(") || tok.is_punct("<") {
            let anonymous = self.attempt(|p| {
                let lit = Rc::new(p.definition_lit()?);
                Ok(match p.instantiation_tail()? {
                    Some((values, arguments)) => {
                        TermAst::Component(Box::new(ComponentAst::Instantiation {
                            definition: DefinitionAst::Lit(lit),
                            values,
                            arguments,
                        }))
                    }
                    None => TermAst::Definition(Box::new(DefinitionAst::Lit(lit))),
                })
            });
            if let Some(t) = anonymous {
                return Ok(t);
            }
            if tok.is_punct("(") {
                self.pos += 1;
                let inner = self.term_or_slice()?;
                self.expect_punct(")")?;
                return Ok(inner);
            }
        }
        Err(self.error(&["term"]))
    }

    // ---- predicates ----

    fn predicate(&mut self) -> PResult<PredicateAst> {
        let lhs = self.or_pred()?;
        if self.eat_keyword("implies") {
            let rhs = self.predicate()?;
            return Ok(PredicateAst::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or_pred(&mut self) -> PResult<PredicateAst> {
        let mut lhs = self.and_pred()?;
        while self.eat_keyword("or") {
            let rhs = self.and_pred()?;
            lhs = PredicateAst::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_pred(&mut self) -> PResult<PredicateAst> {
        let mut lhs = self.not_pred()?;
        while self.eat_keyword("and") || self.eat_punct(",") {
            let rhs = self.not_pred()?;
            lhs = PredicateAst::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn not_pred(&mut self) -> PResult<PredicateAst> {
        if self.eat_keyword("not") {
            return Ok(PredicateAst::not(self.not_pred()?));
        }
        self.primary_pred()
    }

    fn at_rel_op(&self) -> Option<RelOp> {
        self.peek()
            .filter(|t| t.kind == TokenKind::Punctuation)
            .and_then(|t| RelOp::from_symbol(&t.lexeme))
    }

    /// True when a parenthesised predicate must really have been a term.
    fn continues_as_term(&self) -> bool {
        self.at_rel_op().is_some()
            || self.at_keyword("in")
            || ["+", "-", "*", "/", "%", "^", "["]
                .iter()
                .any(|p| self.at_punct(p))
    }

    fn primary_pred(&mut self) -> PResult<PredicateAst> {
        let Some(tok) = self.peek() else {
            return Err(self.error(&["predicate"]));
        };
        if tok.kind == TokenKind::Boolean {
            let next_is_rel = self
                .peek_at(1)
                .is_some_and(|n| n.kind == TokenKind::Punctuation && RelOp::from_symbol(&n.lexeme).is_some());
            if !next_is_rel {
                self.pos += 1;
                return Ok(if tok.lexeme == "true" {
                    PredicateAst::True
                } else {
                    PredicateAst::False
                });
            }
        }
        if tok.is_keyword("forall") || tok.is_keyword("exists") {
            self.pos += 1;
            let quantifier = if tok.is_keyword("forall") {
                Quantifier::Forall
            } else {
                Quantifier::Exists
            };
            let var = self.expect_ident()?;
            self.expect_keyword("in")?;
            let list = self.list()?;
            self.expect_punct(":")?;
            let body = self.predicate()?;
            return Ok(PredicateAst::Quantified {
                quantifier,
                var,
                list,
                body: Box::new(body),
            });
        }
        if tok.is_punct("(") {
            let grouped = self.attempt(|p| {
                p.expect_punct("(")?;
                let inner = p.predicate()?;
                p.expect_punct(")")?;
                if p.continues_as_term() {
                    return Err(p.error(&["`)`"]));
                }
                Ok(inner)
            });
            if let Some(p) = grouped {
                return Ok(p);
            }
        }
        let lhs = self.term()?;
        if let Some(op) = self.at_rel_op() {
            self.pos += 1;
            let rhs = self.term()?;
            return Ok(PredicateAst::Rel(op, lhs, rhs));
        }
        match lhs {
            TermAst::Var(v) => {
                if self.eat_keyword("in") {
                    let rhs = self.term()?;
                    Ok(PredicateAst::Member(v, rhs))
                } else {
                    Ok(PredicateAst::Holds(v))
                }
            }
            _ => Err(self.error(&["relational operator", "`in`"])),
        }
    }
}
