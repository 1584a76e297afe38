//! The error value produced when evaluation fails.

use std::fmt;

use crate::syntax::Span;

/// Broad category, used by the command line to pick an exit code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ErrorClass {
    #[default]
    Eval,
    /// A lex or parse error in an imported module.
    Syntax,
    /// A file could not be read.
    Io,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalError {
    pub class: ErrorClass,
    pub message: String,
    pub span: Option<Span>,
    /// Innermost first: the definitions and imports being evaluated.
    pub trace: Vec<String>,
}

impl EvalError {
    pub fn new(message: impl Into<String>) -> Self {
        EvalError {
            class: ErrorClass::Eval,
            message: message.into(),
            span: None,
            trace: Vec::new(),
        }
    }

    pub fn with_class(mut self, class: ErrorClass) -> Self {
        self.class = class;
        self
    }

    pub fn at(mut self, span: Span) -> Self {
        self.span.get_or_insert(span);
        self
    }

    pub fn context(mut self, frame: impl Into<String>) -> Self {
        self.trace.push(frame.into());
        self
    }
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(span) = self.span {
            write!(f, "{span}: ")?;
        }
        f.write_str(&self.message)?;
        for frame in &self.trace {
            write!(f, "\n  in {frame}")?;
        }
        Ok(())
    }
}

impl std::error::Error for EvalError {}

pub type EvalResult<T> = Result<T, EvalError>;
