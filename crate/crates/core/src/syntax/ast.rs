//! Abstract syntax of Treo source files.
//!
//! The tree mirrors the grammar closely. Parentheses are not kept as nodes;
//! the pretty printer re-inserts them from operator precedence.

use std::rc::Rc;

use super::token::Span;

/// A dotted name such as `lib.channels.fifo1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DottedName(pub Vec<String>);

impl DottedName {
    pub fn simple(s: &str) -> Self {
        DottedName(vec![s.to_string()])
    }

    pub fn joined(&self) -> String {
        self.0.join(".")
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SourceFileAst {
    pub section: Option<DottedName>,
    pub imports: Vec<DottedName>,
    pub assignments: Vec<Assignment>,
}

#[derive(Clone, Debug)]
pub struct Assignment {
    pub name: String,
    pub definition: DefinitionAst,
    pub span: Option<Span>,
}

impl PartialEq for Assignment {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.definition == other.definition
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DefinitionAst {
    Var(VariableAst),
    Lit(Rc<DefinitionLit>),
}

/// `<params>(nodes) body`
#[derive(Clone, Debug)]
pub struct DefinitionLit {
    pub params: Vec<VariableAst>,
    pub nodes: Vec<NodeAst>,
    pub body: ComponentAst,
    /// Where the literal starts. Not part of equality.
    pub span: Option<Span>,
}

impl PartialEq for DefinitionLit {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.nodes == other.nodes && self.body == other.body
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IoMarker {
    Input,
    Output,
    /// The `:` marker; recorded but carries no direction.
    Mixed,
}

impl IoMarker {
    pub fn symbol(self) -> &'static str {
        match self {
            IoMarker::Input => "?",
            IoMarker::Output => "!",
            IoMarker::Mixed => ":",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeAst {
    pub var: VariableAst,
    pub marker: Option<IoMarker>,
    /// Optional identifier after the marker. Kept as metadata only.
    pub type_tag: Option<String>,
}

/// A name followed by zero or more index lists: `a.b[1][i:k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct VariableAst {
    pub name: DottedName,
    pub indices: Vec<ListAst>,
}

impl VariableAst {
    pub fn simple(s: &str) -> Self {
        VariableAst {
            name: DottedName::simple(s),
            indices: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ComponentAst {
    Var(VariableAst),
    Atoms(Vec<AtomAst>),
    Composition(Vec<ComponentAst>),
    Comprehension {
        body: Vec<ComponentAst>,
        predicate: PredicateAst,
    },
    Instantiation {
        definition: DefinitionAst,
        values: Vec<TermAst>,
        arguments: Vec<VariableAst>,
    },
    For {
        var: String,
        list: ListAst,
        body: Box<ComponentAst>,
    },
    If {
        branches: Vec<(PredicateAst, ComponentAst)>,
        otherwise: Option<Box<ComponentAst>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum AtomAst {
    Opaque(String),
    Automaton(CaAtom),
}

/// Transition-list form of a primitive: `start s; s -{a,b}, g -> t;`.
#[derive(Clone, Debug, PartialEq)]
pub struct CaAtom {
    pub start: Option<String>,
    pub transitions: Vec<CaTransitionAst>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaTransitionAst {
    pub source: String,
    pub sync: Vec<String>,
    /// Conjunction of equalities. Empty means `true`.
    pub guard: Vec<(GuardTermAst, GuardTermAst)>,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GuardTermAst {
    /// A port datum or the current value of a memory cell.
    Name(String),
    /// `m'`, the next value of a memory cell.
    Primed(String),
    Int(i64),
    Text(String),
    Bool(bool),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Rem => "%",
            BinaryOp::Pow => "^",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TermAst {
    Var(VariableAst),
    Nat(u64),
    Dec(f64),
    Bool(bool),
    Str(String),
    Component(Box<ComponentAst>),
    Definition(Box<DefinitionAst>),
    List(ListAst),
    /// `T0:T1`, the half-open range `[T0, T1)`.
    Slice(Box<TermAst>, Box<TermAst>),
    /// `T[L]` on a term that is not a plain variable.
    Index(Box<TermAst>, ListAst),
    Len(Box<TermAst>),
    Neg(Box<TermAst>),
    Binary(BinaryOp, Box<TermAst>, Box<TermAst>),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ListAst(pub Vec<ListItem>);

#[derive(Clone, Debug, PartialEq)]
pub enum ListItem {
    Term(TermAst),
    /// `T0..T1`, spliced inclusively into the enclosing list.
    Range(TermAst, TermAst),
    /// `T0:T1` inside a list, a single nested inclusive list.
    Slice(TermAst, TermAst),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelOp {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
    Ne,
}

impl RelOp {
    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Le => "<=",
            RelOp::Lt => "<",
            RelOp::Ge => ">=",
            RelOp::Gt => ">",
            RelOp::Eq => "=",
            RelOp::Ne => "!=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "<=" => RelOp::Le,
            "<" => RelOp::Lt,
            ">=" => RelOp::Ge,
            ">" => RelOp::Gt,
            "=" => RelOp::Eq,
            "!=" => RelOp::Ne,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PredicateAst {
    True,
    False,
    Member(VariableAst, TermAst),
    Rel(RelOp, TermAst, TermAst),
    /// A boolean-valued variable used as a predicate.
    Holds(VariableAst),
    Not(Box<PredicateAst>),
    And(Box<PredicateAst>, Box<PredicateAst>),
    Or(Box<PredicateAst>, Box<PredicateAst>),
    Implies(Box<PredicateAst>, Box<PredicateAst>),
    Quantified {
        quantifier: Quantifier,
        var: String,
        list: ListAst,
        body: Box<PredicateAst>,
    },
}

impl PredicateAst {
    pub fn not(p: PredicateAst) -> Self {
        PredicateAst::Not(Box::new(p))
    }

    pub fn and(a: PredicateAst, b: PredicateAst) -> Self {
        PredicateAst::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PredicateAst, b: PredicateAst) -> Self {
        PredicateAst::Or(Box::new(a), Box::new(b))
    }
}
