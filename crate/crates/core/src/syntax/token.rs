use std::fmt;

/// Location of a token in its source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    /// Byte offset of the first character.
    pub offset: usize,
    /// 1-based line.
    pub line: usize,
    /// 1-based column, counted in characters.
    pub column: usize,
    /// Length in bytes.
    pub len: usize,
}

impl Span {
    pub fn end(&self) -> usize {
        self.offset + self.len
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Keyword,
    Identifier,
    Natural,
    Decimal,
    Boolean,
    String,
    Punctuation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub span: Span,
}

impl Token {
    pub fn is_punct(&self, p: &str) -> bool {
        self.kind == TokenKind::Punctuation && self.lexeme == p
    }

    pub fn is_keyword(&self, k: &str) -> bool {
        self.kind == TokenKind::Keyword && self.lexeme == k
    }

    /// Payload of a string token without the surrounding quotes.
    pub fn string_value(&self) -> &str {
        debug_assert_eq!(self.kind, TokenKind::String);
        &self.lexeme[1..self.lexeme.len() - 1]
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::Identifier => write!(f, "identifier `{}`", self.lexeme),
            TokenKind::Natural | TokenKind::Decimal => write!(f, "number `{}`", self.lexeme),
            TokenKind::String => write!(f, "string {}", self.lexeme),
            _ => write!(f, "`{}`", self.lexeme),
        }
    }
}

pub const KEYWORDS: &[&str] = &[
    "section", "import", "for", "in", "if", "else", "not", "and", "or", "implies", "forall",
    "exists",
];

/// Longest punctuation first so that the lexer can match greedily.
pub const PUNCTUATION: &[&str] = &[
    "->", "..", "<=", ">=", "!=", "(", ")", "{", "}", "[", "]", "<", ">", "=", ",", ";", ".", ":",
    "?", "!", "|", "+", "-", "*", "/", "%", "^", "'",
];
