//! Lexing, parsing, desugaring and printing of Treo source.

pub mod ast;
pub mod desugar;
pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod token;

pub use ast::*;
pub use desugar::{desugar, desugar_file};
pub use lexer::{tokenize, LexError};
pub use parser::{parse_file, ParseError};
pub use pretty::pretty_print;
pub use token::{Span, Token, TokenKind};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("lex error: {0}")]
    Lex(#[from] LexError),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
}

impl SyntaxError {
    pub fn span(&self) -> Span {
        match self {
            SyntaxError::Lex(e) => e.span(),
            SyntaxError::Parse(e) => e.span,
        }
    }
}

/// Tokenizes and parses a whole file.
pub fn parse_source(source: &str) -> Result<SourceFileAst, SyntaxError> {
    let tokens = tokenize(source)?;
    Ok(parse_file(&tokens)?)
}

pub fn parse_component_str(source: &str) -> Result<ComponentAst, SyntaxError> {
    let tokens = tokenize(source)?;
    Ok(parser::parse_component(&tokens)?)
}

pub fn parse_predicate_str(source: &str) -> Result<PredicateAst, SyntaxError> {
    let tokens = tokenize(source)?;
    Ok(parser::parse_predicate(&tokens)?)
}

pub fn parse_term_str(source: &str) -> Result<TermAst, SyntaxError> {
    let tokens = tokenize(source)?;
    Ok(parser::parse_term(&tokens)?)
}
