//! Line-oriented interactive session.
//!
//! Each input line holds statements (braces optional) or one meta-command:
//! `:universe`, `:primes`, `:config`, `:quit`. Errors are reported and the
//! session carries on with its universe unchanged.

use std::io::{self, BufRead, Write};

use zoli_core::{parse_statements, z_primes, EvalConfig, Session, Universe};

use crate::diag::Diagnostic;

const PROMPT: &str = "zoli> ";

pub struct Repl {
    session: Session,
}

/// What the caller should do after a line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Quit,
}

impl Repl {
    pub fn new(config: EvalConfig) -> Self {
        Self {
            session: Session::new(config),
        }
    }

    pub fn universe(&self) -> Option<&Universe> {
        self.session.universe()
    }

    /// Handles one input line. `line_no` is 1-based and only used to locate
    /// diagnostics.
    pub fn handle_line(
        &mut self,
        line: &str,
        line_no: u32,
        out: &mut dyn Write,
        err: &mut dyn Write,
    ) -> io::Result<Flow> {
        let trimmed = line.trim();
        if let Some(meta) = trimmed.strip_prefix(':') {
            return self.meta(meta.trim(), out, err);
        }
        let program = match parse_statements(line) {
            Ok(p) => p,
            Err(e) => {
                Diagnostic::from(e).shifted(line_no - 1).emit(err);
                return Ok(Flow::Continue);
            }
        };
        for (i, stmt) in program.stmts.iter().enumerate() {
            match self.session.execute(stmt) {
                Ok(Some(text)) => writeln!(out, "{text}")?,
                Ok(None) => {}
                Err(kind) => {
                    let e = zoli_core::EvalError {
                        kind,
                        stmt_index: i,
                        span: program.span_of(i),
                    };
                    Diagnostic::from(e).shifted(line_no - 1).emit(err);
                    break;
                }
            }
        }
        Ok(Flow::Continue)
    }

    fn meta(&self, command: &str, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<Flow> {
        let empty = Universe::empty();
        let universe = self.universe().unwrap_or(&empty);
        match command {
            "universe" => writeln!(out, "ZoT: {universe}")?,
            "primes" => {
                let primes: Vec<String> = z_primes(universe).iter().map(i64::to_string).collect();
                writeln!(out, "{}", primes.join(" "))?;
            }
            "config" => writeln!(out, "{}", self.session.config)?,
            "quit" | "q" => return Ok(Flow::Quit),
            other => Diagnostic::usage(format!(
                "unknown command `:{other}` (try :universe, :primes, :config, :quit)"
            ))
            .emit(err),
        }
        Ok(Flow::Continue)
    }

    /// Reads lines until `:quit` or end of input.
    pub fn run(
        &mut self,
        input: &mut dyn BufRead,
        out: &mut dyn Write,
        err: &mut dyn Write,
        prompt: bool,
    ) -> io::Result<()> {
        let mut line = String::new();
        let mut line_no = 0u32;
        loop {
            if prompt {
                write!(out, "{PROMPT}")?;
                out.flush()?;
            }
            line.clear();
            if input.read_line(&mut line)? == 0 {
                return Ok(());
            }
            line_no += 1;
            if self.handle_line(&line, line_no, out, err)? == Flow::Quit {
                return Ok(());
            }
            out.flush()?;
        }
    }
}
