//! Diagnostics and the process exit-code contract.

use std::fmt;
use std::io::{self, Write};

use zoli_core::{BijectiveError, EvalError, Span, SyntaxError, UniverseError, ZPrimeError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_RUNTIME: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

/// A reportable failure: `error[<kind>] line L, col C: <message>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: String,
    pub span: Option<Span>,
    pub message: String,
    pub exit_code: u8,
}

impl Diagnostic {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: "Usage".into(),
            span: None,
            message: message.into(),
            exit_code: EXIT_USAGE,
        }
    }

    pub fn io(path: &str, err: &io::Error) -> Self {
        Self {
            kind: "Io".into(),
            span: None,
            message: format!("{path}: {err}"),
            exit_code: EXIT_USAGE,
        }
    }

    /// Moves the location down by `lines`, for REPL input after the first line.
    pub fn shifted(mut self, lines: u32) -> Self {
        if let Some(span) = &mut self.span {
            span.line += lines;
        }
        self
    }

    pub fn emit(&self, err: &mut dyn Write) {
        let _ = writeln!(err, "{self}");
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.span {
            Some(span) => write!(f, "error[{}] {}: {}", self.kind, span, self.message),
            None => write!(f, "error[{}]: {}", self.kind, self.message),
        }
    }
}

impl From<SyntaxError> for Diagnostic {
    fn from(e: SyntaxError) -> Self {
        Self {
            kind: e.kind().into(),
            span: Some(e.span()),
            message: e.to_string(),
            exit_code: EXIT_PARSE,
        }
    }
}

impl From<EvalError> for Diagnostic {
    fn from(e: EvalError) -> Self {
        Self {
            kind: e.kind.name().into(),
            span: Some(e.span),
            message: format!("{} (statement {})", e.kind, e.stmt_index + 1),
            exit_code: EXIT_RUNTIME,
        }
    }
}

macro_rules! runtime_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for Diagnostic {
            fn from(e: $ty) -> Self {
                Self {
                    kind: e.kind().into(),
                    span: None,
                    message: e.to_string(),
                    exit_code: EXIT_RUNTIME,
                }
            }
        }
    )*};
}

runtime_from!(UniverseError, ZPrimeError, BijectiveError);
