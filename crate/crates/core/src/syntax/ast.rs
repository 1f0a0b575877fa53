use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use super::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            Self::Add => '+',
            Self::Sub => '-',
            Self::Mul => '*',
            Self::Div => '/',
            Self::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    IntLit(i64),
    Neg(Box<Expr>),
    Binary {
        op: BinOp,
        left: Box<Expr>,
        right: Box<Expr>,
    },
}

impl Expr {
    pub fn binary(op: BinOp, left: Expr, right: Expr) -> Self {
        Self::Binary {
            op,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn negate(operand: Expr) -> Self {
        Self::Neg(Box::new(operand))
    }

    // Grammar levels: expr 1, term 2, factor 3, power 4, atom 5.
    fn level(&self) -> u8 {
        match self {
            Self::IntLit(_) => 5,
            Self::Binary { op: BinOp::Pow, .. } => 4,
            Self::Neg(_) => 3,
            Self::Binary {
                op: BinOp::Mul | BinOp::Div,
                ..
            } => 2,
            Self::Binary { .. } => 1,
        }
    }

    fn fmt_at(&self, min_level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level() < min_level {
            f.write_str("(")?;
            self.fmt_at(0, f)?;
            return f.write_str(")");
        }
        match self {
            Self::IntLit(v) => write!(f, "{v}"),
            Self::Neg(inner) => {
                f.write_str("-")?;
                inner.fmt_at(3, f)
            }
            Self::Binary { op, left, right } => {
                let (l, r) = match op {
                    BinOp::Add | BinOp::Sub => (1, 2),
                    BinOp::Mul | BinOp::Div => (2, 3),
                    BinOp::Pow => (5, 3),
                };
                left.fmt_at(l, f)?;
                write!(f, "{}", op.symbol())?;
                right.fmt_at(r, f)
            }
        }
    }
}

/// Prints with the fewest parentheses that re-parse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(0, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Stmt {
    /// `ZoT=(lo?hi)`
    Init { lo: i64, hi: i64 },
    /// `label:=value`
    Rebind { label: i64, value: i64 },
    /// `label:=[a,b,c]`
    Stack { label: i64, values: Vec<i64> },
    /// `writeln(expr)`
    Writeln(Expr),
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Init { lo, hi } => write!(f, "ZoT=({lo}?{hi})"),
            Self::Rebind { label, value } => write!(f, "{label}:={value}"),
            Self::Stack { label, values } => {
                write!(f, "{label}:=[")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            Self::Writeln(expr) => write!(f, "writeln({expr})"),
        }
    }
}

/// A parsed script. `spans[i]` is where `stmts[i]` starts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub stmts: Vec<Stmt>,
    pub spans: Vec<Span>,
}

impl Program {
    /// A program with every statement located at the default span.
    pub fn new(stmts: Vec<Stmt>) -> Self {
        let spans = alloc::vec![Span::default(); stmts.len()];
        Self { stmts, spans }
    }

    pub fn span_of(&self, index: usize) -> Span {
        self.spans.get(index).copied().unwrap_or_default()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{\n")?;
        for stmt in &self.stmts {
            writeln!(f, "  {stmt};")?;
        }
        f.write_str("}\n")
    }
}
