use super::token::{Span, Token, TokenKind, KEYWORDS, PUNCTUATION};
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LexError {
    #[error("{span}: unterminated string literal")]
    UnterminatedString { span: Span },
    #[error("{span}: unterminated block comment")]
    UnterminatedComment { span: Span },
    #[error("{span}: illegal character {ch:?}")]
    IllegalCharacter { ch: char, span: Span },
}

impl LexError {
    pub fn span(&self) -> Span {
        match self {
            LexError::UnterminatedString { span }
            | LexError::UnterminatedComment { span }
            | LexError::IllegalCharacter { span, .. } => *span,
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_nth(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn bump_n(&mut self, bytes: usize) {
        let target = self.pos + bytes;
        while self.pos < target {
            self.bump();
        }
    }

    fn span_from(&self, start: (usize, usize, usize)) -> Span {
        Span {
            offset: start.0,
            line: start.1,
            column: start.2,
            len: self.pos - start.0,
        }
    }

    fn mark(&self) -> (usize, usize, usize) {
        (self.pos, self.line, self.column)
    }
}

/// Splits Treo source into tokens, dropping whitespace and comments.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor {
        src: source,
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        let start = cur.mark();
        if c.is_ascii_whitespace() {
            cur.bump();
            continue;
        }
        if cur.rest().starts_with("//") {
            while let Some(c) = cur.bump() {
                if c == '\n' {
                    break;
                }
            }
            continue;
        }
        if cur.rest().starts_with("/*") {
            cur.bump_n(2);
            loop {
                if cur.rest().starts_with("*/") {
                    cur.bump_n(2);
                    break;
                }
                if cur.bump().is_none() {
                    return Err(LexError::UnterminatedComment {
                        span: cur.span_from(start),
                    });
                }
            }
            continue;
        }

        let kind = if c == '"' {
            cur.bump();
            loop {
                match cur.bump() {
                    Some('"') => break,
                    Some(_) => {}
                    None => {
                        return Err(LexError::UnterminatedString {
                            span: cur.span_from(start),
                        })
                    }
                }
            }
            TokenKind::String
        } else if c.is_ascii_digit() {
            if c == '0' {
                cur.bump();
            } else {
                while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                    cur.bump();
                }
            }
            if cur.peek() == Some('.') && cur.peek_nth(1).is_some_and(|c| c.is_ascii_digit()) {
                cur.bump();
                while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                    cur.bump();
                }
                TokenKind::Decimal
            } else {
                TokenKind::Natural
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            while cur
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                cur.bump();
            }
            let word = &source[start.0..cur.pos];
            if word == "true" || word == "false" {
                TokenKind::Boolean
            } else if KEYWORDS.contains(&word) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            }
        } else if let Some(p) = PUNCTUATION.iter().find(|p| cur.rest().starts_with(**p)) {
            cur.bump_n(p.len());
            TokenKind::Punctuation
        } else {
            cur.bump();
            return Err(LexError::IllegalCharacter {
                ch: c,
                span: cur.span_from(start),
            });
        };

        let span = cur.span_from(start);
        tokens.push(Token {
            kind,
            lexeme: source[span.offset..span.end()].to_string(),
            span,
        });
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lexemes(src: &str) -> Vec<String> {
        tokenize(src).unwrap().into_iter().map(|t| t.lexeme).collect()
    }

    #[test]
    fn fifo1_interface() {
        let toks = tokenize("fifo1(a?,b!)").unwrap();
        let got: Vec<_> = toks.iter().map(|t| (t.kind, t.lexeme.as_str())).collect();
        use TokenKind::*;
        assert_eq!(
            got,
            vec![
                (Identifier, "fifo1"),
                (Punctuation, "("),
                (Identifier, "a"),
                (Punctuation, "?"),
                (Punctuation, ","),
                (Identifier, "b"),
                (Punctuation, "!"),
                (Punctuation, ")"),
            ]
        );
    }

    #[test]
    fn empty_and_comments() {
        assert!(tokenize("").unwrap().is_empty());
        let toks = tokenize("/*x*/ 42 //y").unwrap();
        assert_eq!(toks.len(), 1);
        assert_eq!(toks[0].kind, TokenKind::Natural);
        assert_eq!(toks[0].lexeme, "42");
    }

    #[test]
    fn numbers_and_ranges() {
        assert_eq!(lexemes("1..3"), ["1", "..", "3"]);
        assert_eq!(lexemes("1.5"), ["1.5"]);
        assert_eq!(tokenize("1.5").unwrap()[0].kind, TokenKind::Decimal);
        // `0` is a complete natural; `007` lexes as three naturals
        assert_eq!(lexemes("007"), ["0", "0", "7"]);
    }

    #[test]
    fn strings_are_non_greedy() {
        let toks = tokenize(r#""a" "b""#).unwrap();
        assert_eq!(toks.len(), 2);
        assert_eq!(toks[0].string_value(), "a");
    }

    #[test]
    fn errors_carry_spans() {
        let err = tokenize("x \"abc").unwrap_err();
        assert!(matches!(err, LexError::UnterminatedString { .. }));
        assert_eq!(err.span().column, 3);
        let err = tokenize("a\n  @").unwrap_err();
        assert_eq!(err.span().line, 2);
        assert_eq!(err.span().column, 3);
        assert!(matches!(tokenize("/* open"), Err(LexError::UnterminatedComment { .. })));
    }

    #[test]
    fn ca_atom_tokens() {
        assert_eq!(
            lexemes("empty -{a},m' = a-> full;"),
            ["empty", "-", "{", "a", "}", ",", "m", "'", "=", "a", "->", "full", ";"]
        );
    }

    #[test]
    fn keywords_and_booleans() {
        let toks = tokenize("for in true import x").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| t.kind).collect();
        use TokenKind::*;
        assert_eq!(kinds, [Keyword, Keyword, Boolean, Keyword, Identifier]);
    }
}
