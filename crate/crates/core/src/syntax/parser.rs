use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::ast::{BinOp, Expr, Program, Stmt};
use super::lexer::{describe, end_span, tokenize, Token, TokenKind};
use super::{Span, SyntaxError};

const MAX_NESTING: usize = 200;

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    eof: Span,
    depth: usize,
}

impl<'t> Parser<'t> {
    fn new(tokens: &'t [Token], eof: Span) -> Self {
        Self {
            tokens,
            pos: 0,
            eof,
            depth: 0,
        }
    }

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<&'t TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn here(&self) -> Span {
        self.peek().map_or(self.eof, |t| t.span)
    }

    fn advance(&mut self) -> Option<&'t Token> {
        let tok = self.tokens.get(self.pos)?;
        self.pos += 1;
        Some(tok)
    }

    fn error(&self, expected: impl Into<String>) -> SyntaxError {
        SyntaxError::ParseError {
            expected: expected.into(),
            found: describe(self.peek()),
            span: self.here(),
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<(), SyntaxError> {
        if self.eat(&kind) {
            Ok(())
        } else {
            Err(self.error(kind.to_string()))
        }
    }

    fn expect_int(&mut self) -> Result<i64, SyntaxError> {
        match self.peek_kind() {
            Some(TokenKind::Integer(v)) => {
                self.pos += 1;
                Ok(*v)
            }
            _ => Err(self.error("integer")),
        }
    }

    fn signed_int(&mut self) -> Result<i64, SyntaxError> {
        let negative = self.eat(&TokenKind::Minus);
        let v = self.expect_int()?;
        Ok(if negative { -v } else { v })
    }

    fn skip_separators(&mut self) {
        while matches!(
            self.peek_kind(),
            Some(TokenKind::Semicolon | TokenKind::Newline)
        ) {
            self.pos += 1;
        }
    }

    fn at_statement_start(&self) -> bool {
        match self.peek_kind() {
            Some(TokenKind::Integer(_)) => true,
            Some(TokenKind::Ident(name)) => name == "ZoT" || name == "writeln",
            _ => false,
        }
    }

    fn program(&mut self) -> Result<Program, SyntaxError> {
        self.skip_newlines();
        match self.peek_kind() {
            Some(TokenKind::LBrace) => self.pos += 1,
            Some(TokenKind::RBrace) => return Err(self.unbalanced("unmatched '}'")),
            _ => return Err(self.error("'{'")),
        }
        let mut program = Program::default();
        loop {
            self.skip_separators();
            match self.peek_kind() {
                Some(TokenKind::RBrace) => {
                    self.pos += 1;
                    break;
                }
                None => return Err(self.unbalanced("missing closing '}'")),
                _ => self.statement_into(&mut program)?,
            }
        }
        self.skip_separators();
        match self.peek_kind() {
            None => Ok(program),
            Some(TokenKind::RBrace) => Err(self.unbalanced("unmatched '}'")),
            Some(_) => Err(self.error("end of input")),
        }
    }

    fn bare_statements(&mut self) -> Result<Program, SyntaxError> {
        let mut program = Program::default();
        loop {
            self.skip_separators();
            match self.peek_kind() {
                None => return Ok(program),
                Some(TokenKind::RBrace) => return Err(self.unbalanced("unmatched '}'")),
                _ => self.statement_into(&mut program)?,
            }
        }
    }

    fn skip_newlines(&mut self) {
        while self.eat(&TokenKind::Newline) {}
    }

    fn unbalanced(&self, message: &str) -> SyntaxError {
        SyntaxError::UnbalancedBraces {
            message: message.into(),
            span: self.here(),
        }
    }

    fn statement_into(&mut self, program: &mut Program) -> Result<(), SyntaxError> {
        if !self.at_statement_start() {
            return Err(self.error("statement"));
        }
        let span = self.here();
        let stmt = self.statement()?;
        program.stmts.push(stmt);
        program.spans.push(span);
        Ok(())
    }

    fn statement(&mut self) -> Result<Stmt, SyntaxError> {
        match self.advance().map(|t| &t.kind) {
            Some(TokenKind::Ident(name)) if name == "ZoT" => {
                self.expect(TokenKind::Equals)?;
                self.expect(TokenKind::LParen)?;
                let lo = self.expect_int()?;
                self.expect(TokenKind::Question)?;
                let hi = self.expect_int()?;
                self.expect(TokenKind::RParen)?;
                Ok(Stmt::Init { lo, hi })
            }
            Some(TokenKind::Ident(_)) => {
                self.expect(TokenKind::LParen)?;
                let expr = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(Stmt::Writeln(expr))
            }
            Some(TokenKind::Integer(label)) => {
                let label = *label;
                self.expect(TokenKind::Assign)?;
                if self.eat(&TokenKind::LBracket) {
                    let mut values = Vec::new();
                    values.push(self.signed_int()?);
                    while self.eat(&TokenKind::Comma) {
                        values.push(self.signed_int()?);
                    }
                    self.expect(TokenKind::RBracket)?;
                    Ok(Stmt::Stack { label, values })
                } else if matches!(
                    self.peek_kind(),
                    Some(TokenKind::Integer(_) | TokenKind::Minus)
                ) {
                    Ok(Stmt::Rebind {
                        label,
                        value: self.signed_int()?,
                    })
                } else {
                    Err(self.error("integer or '['"))
                }
            }
            // statement_into only calls us at a statement start
            _ => unreachable!("statement() called off a statement start"),
        }
    }

    fn nested<T>(
        &mut self,
        f: impl FnOnce(&mut Self) -> Result<T, SyntaxError>,
    ) -> Result<T, SyntaxError> {
        if self.depth >= MAX_NESTING {
            return Err(self.error(format!("at most {MAX_NESTING} levels of nesting")));
        }
        self.depth += 1;
        let out = f(self);
        self.depth -= 1;
        out
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut left = self.term()?;
        loop {
            let op = match self.peek_kind() {
                Some(TokenKind::Plus) => BinOp::Add,
                Some(TokenKind::Minus) => BinOp::Sub,
                _ => return Ok(left),
            };
            self.pos += 1;
            left = Expr::binary(op, left, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut left = self.factor()?;
        loop {
            let op = match self.peek_kind() {
                Some(TokenKind::Star) => BinOp::Mul,
                Some(TokenKind::Slash) => BinOp::Div,
                _ => return Ok(left),
            };
            self.pos += 1;
            left = Expr::binary(op, left, self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        self.nested(|p| {
            if p.eat(&TokenKind::Minus) {
                Ok(Expr::negate(p.factor()?))
            } else {
                p.power()
            }
        })
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        if self.eat(&TokenKind::Caret) {
            Ok(Expr::binary(BinOp::Pow, base, self.factor()?))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek_kind() {
            Some(TokenKind::Integer(v)) => {
                self.pos += 1;
                Ok(Expr::IntLit(*v))
            }
            Some(TokenKind::LParen) => {
                self.pos += 1;
                let inner = self.nested(Self::expr)?;
                self.expect(TokenKind::RParen)?;
                Ok(inner)
            }
            _ => Err(self.error("integer or '('")),
        }
    }
}

fn eof_after(tokens: &[Token]) -> Span {
    tokens.last().map_or_else(Span::default, |t| t.span)
}

/// Parses a braced program from tokens. End-of-input errors point at the
/// last token.
pub fn parse(tokens: &[Token]) -> Result<Program, SyntaxError> {
    Parser::new(tokens, eof_after(tokens)).program()
}

/// Tokenizes and parses a complete `.zoli` script.
pub fn parse_program(source: &str) -> Result<Program, SyntaxError> {
    let tokens = tokenize(source)?;
    Parser::new(&tokens, end_span(source)).program()
}

/// Parses statements with the surrounding braces optional, as typed at a REPL.
pub fn parse_statements(source: &str) -> Result<Program, SyntaxError> {
    let tokens = tokenize(source)?;
    let mut parser = Parser::new(&tokens, end_span(source));
    parser.skip_separators();
    if parser.peek_kind() == Some(&TokenKind::LBrace) {
        parser.program()
    } else {
        parser.bare_statements()
    }
}
