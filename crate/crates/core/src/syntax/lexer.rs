use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{Span, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Question,
    /// `:=`
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    /// `=`
    Equals,
    Integer(i64),
    Ident(String),
    Newline,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Self::LBrace => "'{'",
            Self::RBrace => "'}'",
            Self::LParen => "'('",
            Self::RParen => "')'",
            Self::LBracket => "'['",
            Self::RBracket => "']'",
            Self::Comma => "','",
            Self::Semicolon => "';'",
            Self::Question => "'?'",
            Self::Assign => "':='",
            Self::Plus => "'+'",
            Self::Minus => "'-'",
            Self::Star => "'*'",
            Self::Slash => "'/'",
            Self::Caret => "'^'",
            Self::Equals => "'='",
            Self::Integer(v) => return write!(f, "integer {v}"),
            Self::Ident(name) => return write!(f, "identifier `{name}`"),
            Self::Newline => "newline",
        };
        f.write_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

struct Lexer<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span(&self) -> Span {
        Span::new(self.line, self.column)
    }
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut lx = Lexer {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    while let Some(&c) = lx.chars.peek() {
        let span = lx.span();
        let kind = match c {
            ' ' | '\t' | '\r' => {
                lx.bump();
                continue;
            }
            '!' => {
                while lx.chars.peek().is_some_and(|&c| c != '\n') {
                    lx.bump();
                }
                continue;
            }
            '0'..='9' => {
                let mut literal = String::new();
                while let Some(&d) = lx.chars.peek().filter(|d| d.is_ascii_digit()) {
                    literal.push(d);
                    lx.bump();
                }
                match literal.parse() {
                    Ok(v) => TokenKind::Integer(v),
                    Err(_) => return Err(SyntaxError::IntegerTooLarge { literal, span }),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&d) = lx
                    .chars
                    .peek()
                    .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
                {
                    ident.push(d);
                    lx.bump();
                }
                TokenKind::Ident(ident)
            }
            ':' => {
                lx.bump();
                if lx.chars.peek() == Some(&'=') {
                    lx.bump();
                    TokenKind::Assign
                } else {
                    return Err(SyntaxError::UnexpectedCharacter { found: ':', span });
                }
            }
            _ => {
                let kind = match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    '[' => TokenKind::LBracket,
                    ']' => TokenKind::RBracket,
                    ',' => TokenKind::Comma,
                    ';' => TokenKind::Semicolon,
                    '?' => TokenKind::Question,
                    '+' => TokenKind::Plus,
                    '-' => TokenKind::Minus,
                    '*' => TokenKind::Star,
                    '/' => TokenKind::Slash,
                    '^' => TokenKind::Caret,
                    '=' => TokenKind::Equals,
                    '\n' => TokenKind::Newline,
                    found => return Err(SyntaxError::UnexpectedCharacter { found, span }),
                };
                lx.bump();
                kind
            }
        };
        tokens.push(Token { kind, span });
    }
    Ok(tokens)
}

/// End-of-input location: just past the last character.
pub(crate) fn end_span(source: &str) -> Span {
    let line = source.matches('\n').count() as u32 + 1;
    let last = source.rsplit('\n').next().unwrap_or("");
    Span::new(line, last.chars().count() as u32 + 1)
}

pub(crate) fn describe(token: Option<&Token>) -> String {
    token.map_or_else(|| "end of input".into(), |t| t.kind.to_string())
}
