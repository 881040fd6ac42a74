//! Surface syntax: lexing, parsing with name resolution, and printing.

pub mod ast;
mod lexer;
mod parser;
pub mod printer;

use std::collections::HashSet;
use std::sync::Arc;

use thiserror::Error;

pub use ast::{Assertion, Decl, Directive, Expr, FreeId, Hint, Item, RcExpr, Side};
pub use printer::{Charset, Printer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Lexical {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{line}:{col}: expected {expected}, found {found}")]
    Unexpected {
        line: usize,
        col: usize,
        found: String,
        expected: String,
    },
    #[error("{line}: expected {expected}, found end of input")]
    UnexpectedEnd { line: usize, expected: String },
    #[error("{line}:{col}: unbound identifier `{name}`")]
    Unbound {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}: `{name}` is already defined")]
    Duplicate { line: usize, name: String },
    #[error("{line}:{col}: unknown directive `#{name}`")]
    UnknownDirective {
        line: usize,
        col: usize,
        name: String,
    },
}

impl ParseError {
    pub(crate) fn lexical(line: usize, col: usize, msg: &str) -> Self {
        ParseError::Lexical {
            line,
            col,
            msg: msg.to_string(),
        }
    }

    pub fn line(&self) -> usize {
        match self {
            ParseError::Lexical { line, .. }
            | ParseError::Unexpected { line, .. }
            | ParseError::UnexpectedEnd { line, .. }
            | ParseError::Unbound { line, .. }
            | ParseError::Duplicate { line, .. }
            | ParseError::UnknownDirective { line, .. } => *line,
        }
    }
}

/// Parse a sequence of declarations and directives. `declared` holds the
/// names visible to the text and is extended with each new declaration.
pub fn parse_items(text: &str, declared: &mut HashSet<Arc<str>>) -> Result<Vec<Item>, ParseError> {
    parser::Parser::new(text, declared)?.items()
}

/// Parse a single closed expression over the given top-level names.
pub fn parse_expr(text: &str, declared: &HashSet<Arc<str>>) -> Result<RcExpr, ParseError> {
    let mut names = declared.clone();
    let mut p = parser::Parser::new(text, &mut names)?;
    let e = p.expr()?;
    if !p.at_end() {
        return Err(p.unexpected("end of input"));
    }
    Ok(e)
}

/// Print with Unicode symbols and placeholder names for context variables.
pub fn show(e: &Expr) -> String {
    Printer::new(Charset::Unicode, &printer::default_free_name).expr(e)
}
