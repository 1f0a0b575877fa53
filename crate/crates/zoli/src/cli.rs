//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 success, 1 runtime error, 2 parse error, 3 usage or IO error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use zoli_core::bijective::{encode, from_bijective};
use zoli_core::universe::DEFAULT_CHASE_DEPTH;
use zoli_core::{
    divisor_pool, is_z_prime, parse_program, z_primes, BlackHolePolicy, EvalConfig,
    ResolutionPolicy, Session, Universe,
};

use crate::diag::{Diagnostic, EXIT_OK, EXIT_USAGE};
use crate::repl::Repl;

#[derive(Debug, Parser)]
#[command(
    name = "zoli",
    version,
    about = "Interpreter and tools for Zoli numbers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a .zoli script
    Run {
        path: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
        /// After the run, print `ZoT: <universe>` as a final line
        #[arg(long)]
        show_universe: bool,
    },
    /// Interactive session; statements without braces, plus :universe :primes :config :quit
    Repl {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// List z-primes of a universe, or check one number
    Primes(PrimesArgs),
    /// Bijective (zero-free) base-k numerals
    Bij {
        #[command(subcommand)]
        direction: BijDirection,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ResolutionFlag {
    Single,
    Chase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BlackHoleFlag {
    Error,
    First,
    Last,
    All,
}

impl From<BlackHoleFlag> for BlackHolePolicy {
    fn from(flag: BlackHoleFlag) -> Self {
        match flag {
            BlackHoleFlag::Error => Self::Error,
            BlackHoleFlag::First => Self::First,
            BlackHoleFlag::Last => Self::Last,
            BlackHoleFlag::All => Self::All,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Numeral lookup: one step, or follow rebindings transitively
    #[arg(long, value_enum, default_value_t = ResolutionFlag::Single)]
    resolution: ResolutionFlag,
    /// Lookup limit for --resolution chase
    #[arg(long, value_name = "N", default_value_t = DEFAULT_CHASE_DEPTH,
          value_parser = clap::value_parser!(u32).range(1..))]
    chase_depth: u32,
    /// What reading a stacked cell yields
    #[arg(long, value_enum, env = "ZOLI_BLACK_HOLE", default_value_t = BlackHoleFlag::Error)]
    black_hole: BlackHoleFlag,
    /// Numerals with no cell in the universe are errors
    #[arg(long)]
    strict: bool,
}

impl ConfigArgs {
    pub fn to_config(&self) -> EvalConfig {
        EvalConfig {
            resolution: match self.resolution {
                ResolutionFlag::Single => ResolutionPolicy::SingleStep,
                ResolutionFlag::Chase => ResolutionPolicy::Chase {
                    max_depth: self.chase_depth,
                },
            },
            black_hole: self.black_hole.into(),
            strict: self.strict,
        }
    }
}

/// Universe edits are applied in command-line order, across flag kinds.
#[derive(Debug, Clone, Args)]
pub struct PrimesArgs {
    /// Initial universe, e.g. 0..9
    #[arg(long, value_name = "LO..HI", allow_hyphen_values = true, value_parser = parse_range)]
    range: (i64, i64),
    /// Rebind label N to value M
    #[arg(long, value_name = "N=M", allow_hyphen_values = true, value_parser = parse_rebind)]
    rebind: Vec<(i64, i64)>,
    /// Stack values onto label N
    #[arg(long, value_name = "N=[a,b,c]", allow_hyphen_values = true, value_parser = parse_stack)]
    stack: Vec<(i64, Vec<i64>)>,
    /// Insert an opaque symbol at a display index
    #[arg(long, value_name = "NAME@INDEX", value_parser = parse_opaque)]
    opaque: Vec<(String, usize)>,
    /// Delete the cell at a display index
    #[arg(long, value_name = "INDEX")]
    delete: Vec<usize>,
    /// Print true/false for one number instead of listing
    #[arg(long, value_name = "N", allow_negative_numbers = true)]
    check: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum BijDirection {
    /// Decimal to bijective digits
    Encode {
        #[arg(allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        base: u32,
    },
    /// Bijective digits to decimal
    Decode {
        #[arg(allow_hyphen_values = true)]
        digits: String,
        #[arg(long)]
        base: u32,
    },
}

fn parse_int(s: &str) -> Result<i64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not an integer"))
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    Ok((parse_int(lo)?, parse_int(hi)?))
}

fn parse_rebind(s: &str) -> Result<(i64, i64), String> {
    let (n, m) = s
        .split_once('=')
        .ok_or_else(|| format!("expected N=M, got `{s}`"))?;
    Ok((parse_int(n)?, parse_int(m)?))
}

fn parse_stack(s: &str) -> Result<(i64, Vec<i64>), String> {
    let (n, list) = s
        .split_once('=')
        .ok_or_else(|| format!("expected N=[a,b,c], got `{s}`"))?;
    let inner = list
        .trim()
        .strip_prefix('[')
        .and_then(|l| l.strip_suffix(']'))
        .ok_or_else(|| format!("expected a bracketed list, got `{list}`"))?;
    let values = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(parse_int).collect::<Result<_, _>>()?
    };
    Ok((parse_int(n)?, values))
}

fn parse_opaque(s: &str) -> Result<(String, usize), String> {
    let (name, index) = s
        .split_once('@')
        .ok_or_else(|| format!("expected NAME@INDEX, got `{s}`"))?;
    let index = index
        .trim()
        .parse()
        .map_err(|_| format!("`{index}` is not a cell index"))?;
    Ok((name.to_string(), index))
}

enum Edit {
    Rebind(i64, i64),
    Stack(i64, Vec<i64>),
    Opaque(String, usize),
    Delete(usize),
}

/// Collects universe edits in the order their flags appeared.
fn ordered_edits(args: &PrimesArgs, matches: &clap::ArgMatches) -> Vec<Edit> {
    fn positions(matches: &clap::ArgMatches, id: &str) -> Vec<usize> {
        matches
            .indices_of(id)
            .map(|it| it.collect())
            .unwrap_or_default()
    }
    let mut edits: Vec<(usize, Edit)> = Vec::new();
    edits.extend(
        positions(matches, "rebind")
            .into_iter()
            .zip(&args.rebind)
            .map(|(i, &(n, m))| (i, Edit::Rebind(n, m))),
    );
    edits.extend(
        positions(matches, "stack")
            .into_iter()
            .zip(&args.stack)
            .map(|(i, (n, v))| (i, Edit::Stack(*n, v.clone()))),
    );
    edits.extend(
        positions(matches, "opaque")
            .into_iter()
            .zip(&args.opaque)
            .map(|(i, (name, at))| (i, Edit::Opaque(name.clone(), *at))),
    );
    edits.extend(
        positions(matches, "delete")
            .into_iter()
            .zip(&args.delete)
            .map(|(i, &at)| (i, Edit::Delete(at))),
    );
    edits.sort_by_key(|(i, _)| *i);
    edits.into_iter().map(|(_, e)| e).collect()
}

/// Standard streams, injectable for tests.
pub struct Streams<'a> {
    pub input: &'a mut dyn BufRead,
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    /// Show a prompt in the REPL.
    pub interactive: bool,
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn main_with<I, T>(args: I, io: Streams<'_>) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => return clap_exit(e, io.out, io.err),
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => return clap_exit(e, io.out, io.err),
    };
    let result = match &cli.command {
        Command::Run {
            path,
            config,
            show_universe,
        } => cmd_run(path, config.to_config(), *show_universe, io.out),
        Command::Repl { config } => Repl::new(config.to_config())
            .run(io.input, io.out, io.err, io.interactive)
            .map_err(|e| Diagnostic::io("<stdin>", &e)),
        Command::Primes(args) => {
            let sub = matches
                .subcommand_matches("primes")
                .expect("primes subcommand matched");
            cmd_primes(args, sub, io.out)
        }
        Command::Bij { direction } => cmd_bij(direction, io.out),
    };
    let _ = io.out.flush();
    match result {
        Ok(()) => EXIT_OK,
        Err(d) => {
            d.emit(io.err);
            d.exit_code
        }
    }
}

fn clap_exit(e: clap::Error, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = write!(out, "{}", e.render());
            EXIT_OK
        }
        _ => {
            let _ = write!(err, "{}", e.render());
            EXIT_USAGE
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Diagnostic> {
    match writeln!(out, "{text}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Diagnostic::io("<stdout>", &e)),
        _ => Ok(()),
    }
}

pub fn cmd_run(
    path: &PathBuf,
    config: EvalConfig,
    show_universe: bool,
    out: &mut dyn Write,
) -> Result<(), Diagnostic> {
    let display = path.display().to_string();
    let source = fs::read_to_string(path).map_err(|e| Diagnostic::io(&display, &e))?;
    let program = parse_program(&source)?;
    let mut session = Session::new(config);
    for (stmt_index, stmt) in program.stmts.iter().enumerate() {
        match session.execute(stmt) {
            Ok(Some(line)) => write_out(out, &line)?,
            Ok(None) => {}
            Err(kind) => {
                return Err(zoli_core::EvalError {
                    kind,
                    stmt_index,
                    span: program.span_of(stmt_index),
                }
                .into())
            }
        }
    }
    if show_universe {
        let empty = Universe::empty();
        write_out(
            out,
            &format!("ZoT: {}", session.universe().unwrap_or(&empty)),
        )?;
    }
    Ok(())
}

fn cmd_primes(
    args: &PrimesArgs,
    matches: &clap::ArgMatches,
    out: &mut dyn Write,
) -> Result<(), Diagnostic> {
    let (lo, hi) = args.range;
    let mut u = Universe::from_range(lo, hi)?;
    for edit in ordered_edits(args, matches) {
        match edit {
            Edit::Rebind(n, m) => u.rebind(n, m)?,
            Edit::Stack(n, values) => u.stack(n, &values)?,
            Edit::Opaque(name, at) => u.insert_opaque(at, &name)?,
            Edit::Delete(at) => u.delete_at(at)?,
        }
    }
    let text = match args.check {
        Some(n) => is_z_prime(n, &divisor_pool(&u))?.to_string(),
        None => z_primes(&u)
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    };
    write_out(out, &text)
}

fn cmd_bij(direction: &BijDirection, out: &mut dyn Write) -> Result<(), Diagnostic> {
    let text = match direction {
        BijDirection::Encode { value, base } => {
            let n = parse_int(value).map_err(Diagnostic::usage)?;
            encode(n, *base)?
        }
        BijDirection::Decode { digits, base } => from_bijective(digits, *base)?.to_string(),
    };
    write_out(out, &text)
}
