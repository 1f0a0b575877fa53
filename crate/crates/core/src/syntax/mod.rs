//! Lexer, parser and pretty-printer for `.zoli` scripts.
//!
//! ```text
//! program   := "{" sep* (stmt sep*)* "}"
//! sep       := ";" | NEWLINE
//! stmt      := init | stack | rebind | writeln
//! init      := "ZoT" "=" "(" INT "?" INT ")"
//! rebind    := INT ":=" "-"? INT
//! stack     := INT ":=" "[" "-"? INT ("," "-"? INT)* "]"
//! writeln   := "writeln" "(" expr ")"
//! expr      := term (("+" | "-") term)*
//! term      := factor (("*" | "/") factor)*
//! factor    := "-" factor | power
//! power     := atom ("^" factor)?
//! atom      := INT | "(" expr ")"
//! ```
//!
//! `!` starts a comment that runs to the end of the line. Separators between
//! statements may be omitted: `{ ZoT=(1?9) 3:=7 writeln(3) }` is accepted.

mod ast;
mod lexer;
mod parser;

pub use ast::{BinOp, Expr, Program, Stmt};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_program, parse_statements};

use alloc::string::String;
use core::fmt;

/// A 1-based source location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: u32,
    pub column: u32,
}

impl Span {
    pub const fn new(line: u32, column: u32) -> Self {
        Self { line, column }
    }
}

impl Default for Span {
    fn default() -> Self {
        Self::new(1, 1)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("unexpected character {found:?}")]
    UnexpectedCharacter { found: char, span: Span },
    #[error("integer literal {literal} does not fit in 64 bits")]
    IntegerTooLarge { literal: String, span: Span },
    #[error("expected {expected}, found {found}")]
    ParseError {
        expected: String,
        found: String,
        span: Span,
    },
    #[error("{message}")]
    UnbalancedBraces { message: String, span: Span },
}

impl SyntaxError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::UnexpectedCharacter { .. } => "UnexpectedCharacter",
            Self::IntegerTooLarge { .. } => "IntegerTooLarge",
            Self::ParseError { .. } => "ParseError",
            Self::UnbalancedBraces { .. } => "UnbalancedBraces",
        }
    }

    pub fn span(&self) -> Span {
        match self {
            Self::UnexpectedCharacter { span, .. }
            | Self::IntegerTooLarge { span, .. }
            | Self::ParseError { span, .. }
            | Self::UnbalancedBraces { span, .. } => *span,
        }
    }
}
