//! Command-line front end for the Zoli language: script runner, REPL,
//! z-prime queries and bijective numeral conversion.

pub mod cli;
pub mod diag;
pub mod repl;
