//! Core of the Zoli number system.
//!
//! A Zoli universe (`ZoT`) is an ordered list of cells. Each cell was created
//! as some numeral, but what it *holds* can be rebound (`3:=7`), stacked into a
//! black hole (`3:=[18,13,15]`), or replaced by opaque placeholders such as
//! `q`. Numerals appearing in a program are resolved through the universe
//! before any arithmetic happens.
//!
//! The crate is `no_std` and only needs `alloc`. File IO, the CLI and the
//! REPL live in the `zoli` crate.

#![no_std]

extern crate alloc;

pub mod bijective;
pub mod interp;
pub mod syntax;
pub mod universe;
pub mod zprime;

pub use bijective::{encode, from_bijective, to_bijective, BijectiveDigits, BijectiveError};
pub use interp::{
    eval_expr, run_program, BlackHolePolicy, EvalConfig, EvalError, EvalErrorKind, RunFailure,
    RunOutput, Session,
};
pub use syntax::{
    parse, parse_program, parse_statements, tokenize, BinOp, Expr, Program, Span, Stmt,
    SyntaxError, Token, TokenKind,
};
pub use universe::{Cell, Resolution, ResolutionPolicy, Symbol, Universe, UniverseError};
pub use zprime::{divisor_pool, is_z_prime, z_primes, DivisorPool, ZPrimeError};
