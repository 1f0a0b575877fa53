//! Tree-walking evaluator for Zoli programs.
//!
//! Integer literals are resolved through the current universe at the point
//! they appear, and only there: intermediate results are plain integers.
//! When a literal hits a black hole (a stacked cell) the [`BlackHolePolicy`]
//! decides what happens. Under [`BlackHolePolicy::All`] every literal site
//! chooses its occupant independently and the output is the set of distinct
//! results.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::{BinOp, Expr, Program, Span, Stmt};
use crate::universe::{OpaqueName, Resolution, ResolutionPolicy, Universe, UniverseError};

/// What reading a stacked cell yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlackHolePolicy {
    #[default]
    Error,
    First,
    Last,
    All,
}

impl BlackHolePolicy {
    pub fn name(self) -> &'static str {
        match self {
            Self::Error => "error",
            Self::First => "first",
            Self::Last => "last",
            Self::All => "all",
        }
    }
}

impl core::str::FromStr for BlackHolePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "error" => Ok(Self::Error),
            "first" => Ok(Self::First),
            "last" => Ok(Self::Last),
            "all" => Ok(Self::All),
            other => Err(format!(
                "unknown black-hole policy `{other}` (expected error, first, last or all)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalConfig {
    pub resolution: ResolutionPolicy,
    pub black_hole: BlackHolePolicy,
    /// Numerals with no cell in the universe are errors instead of themselves.
    pub strict: bool,
}

impl fmt::Display for EvalConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.resolution {
            ResolutionPolicy::SingleStep => f.write_str("resolution=single")?,
            ResolutionPolicy::Chase { max_depth } => {
                write!(f, "resolution=chase chase-depth={max_depth}")?
            }
        }
        write!(
            f,
            " black-hole={} strict={}",
            self.black_hole.name(),
            self.strict
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalErrorKind {
    #[error("division by zero")]
    DivisionByZero,
    #[error("0^0 is undefined")]
    UndefinedPower,
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("numeral {label} resolves to the opaque symbol `{name}`")]
    IndeterminateOperand { label: i64, name: OpaqueName },
    #[error("numeral {label} resolves to a black hole holding {occupants:?}")]
    BlackHoleOperand { label: i64, occupants: Vec<i64> },
    #[error("integer overflow")]
    Overflow,
    #[error("numeral {0} has no cell in the universe")]
    StrictResolutionError(i64),
    #[error("no universe: initialize one with ZoT=(lo?hi) first")]
    NoUniverse,
    #[error(transparent)]
    Universe(#[from] UniverseError),
}

impl EvalErrorKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::DivisionByZero => "DivisionByZero",
            Self::UndefinedPower => "UndefinedPower",
            Self::NegativeExponent(_) => "NegativeExponent",
            Self::IndeterminateOperand { .. } => "IndeterminateOperand",
            Self::BlackHoleOperand { .. } => "BlackHoleOperand",
            Self::Overflow => "Overflow",
            Self::StrictResolutionError(_) => "StrictResolutionError",
            Self::NoUniverse => "NoUniverse",
            Self::Universe(e) => e.kind(),
        }
    }
}

/// An evaluation error located at the statement that raised it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind}")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub stmt_index: usize,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunOutput {
    pub lines: Vec<String>,
    pub final_universe: Universe,
}

/// A run that stopped at an error, with the output produced before it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{error}")]
pub struct RunFailure {
    pub error: EvalError,
    pub partial: RunOutput,
}

/// Evaluates `expr` against `u`, returning its distinct results in ascending
/// order. Without [`BlackHolePolicy::All`] the result is a single value.
/// `None` stands for "no universe yet": literals then resolve to themselves,
/// or fail with `NoUniverse` in strict mode.
pub fn eval_expr(
    expr: &Expr,
    u: Option<&Universe>,
    config: &EvalConfig,
) -> Result<Vec<i64>, EvalErrorKind> {
    let values = Evaluator { u, config }.eval(expr)?;
    Ok(values.into_iter().collect())
}

struct Evaluator<'a> {
    u: Option<&'a Universe>,
    config: &'a EvalConfig,
}

impl Evaluator<'_> {
    fn eval(&self, expr: &Expr) -> Result<BTreeSet<i64>, EvalErrorKind> {
        match expr {
            Expr::IntLit(n) => self.literal(*n),
            Expr::Neg(inner) => self
                .eval(inner)?
                .into_iter()
                .map(|v| v.checked_neg().ok_or(EvalErrorKind::Overflow))
                .collect(),
            Expr::Binary { op, left, right } => {
                let lhs = self.eval(left)?;
                let rhs = self.eval(right)?;
                let mut out = BTreeSet::new();
                for &a in &lhs {
                    for &b in &rhs {
                        out.insert(apply(*op, a, b)?);
                    }
                }
                Ok(out)
            }
        }
    }

    fn literal(&self, n: i64) -> Result<BTreeSet<i64>, EvalErrorKind> {
        let Some(u) = self.u else {
            return if self.config.strict {
                Err(EvalErrorKind::NoUniverse)
            } else {
                Ok(BTreeSet::from([n]))
            };
        };
        if self.config.strict && !u.has_label(n) {
            return Err(EvalErrorKind::StrictResolutionError(n));
        }
        match u.resolve(n, self.config.resolution)? {
            Resolution::Value(v) => Ok(BTreeSet::from([v])),
            Resolution::OpaqueHit(name) => {
                Err(EvalErrorKind::IndeterminateOperand { label: n, name })
            }
            Resolution::Multi(occupants) => {
                let pick = match self.config.black_hole {
                    BlackHolePolicy::Error => {
                        return Err(EvalErrorKind::BlackHoleOperand {
                            label: n,
                            occupants,
                        })
                    }
                    BlackHolePolicy::First => occupants.first(),
                    BlackHolePolicy::Last => occupants.last(),
                    BlackHolePolicy::All => return Ok(occupants.into_iter().collect()),
                };
                Ok(pick.copied().into_iter().collect())
            }
        }
    }
}

fn apply(op: BinOp, a: i64, b: i64) -> Result<i64, EvalErrorKind> {
    match op {
        BinOp::Add => a.checked_add(b).ok_or(EvalErrorKind::Overflow),
        BinOp::Sub => a.checked_sub(b).ok_or(EvalErrorKind::Overflow),
        BinOp::Mul => a.checked_mul(b).ok_or(EvalErrorKind::Overflow),
        BinOp::Div => {
            if b == 0 {
                return Err(EvalErrorKind::DivisionByZero);
            }
            a.checked_div(b).ok_or(EvalErrorKind::Overflow)
        }
        BinOp::Pow => power(a, b),
    }
}

fn power(base: i64, exp: i64) -> Result<i64, EvalErrorKind> {
    if exp < 0 {
        return Err(EvalErrorKind::NegativeExponent(exp));
    }
    if base == 0 && exp == 0 {
        return Err(EvalErrorKind::UndefinedPower);
    }
    match base {
        0 | 1 => Ok(base),
        -1 => Ok(if exp % 2 == 0 { 1 } else { -1 }),
        _ => u32::try_from(exp)
            .ok()
            .and_then(|e| base.checked_pow(e))
            .ok_or(EvalErrorKind::Overflow),
    }
}

/// Renders one `writeln` result: a bare number, or `{a, b, c}` for several.
pub fn format_results(values: &[i64]) -> String {
    match values {
        [single] => format!("{single}"),
        many => {
            let mut out = String::from("{");
            for (i, v) in many.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&format!("{v}"));
            }
            out.push('}');
            out
        }
    }
}

/// Interpreter state that persists across statements: the current universe.
#[derive(Debug, Clone, Default)]
pub struct Session {
    pub config: EvalConfig,
    universe: Option<Universe>,
}

impl Session {
    pub fn new(config: EvalConfig) -> Self {
        Self {
            config,
            universe: None,
        }
    }

    pub fn universe(&self) -> Option<&Universe> {
        self.universe.as_ref()
    }

    /// Executes one statement. Returns the printed line for `writeln`.
    /// On error the universe is left as it was.
    pub fn execute(&mut self, stmt: &Stmt) -> Result<Option<String>, EvalErrorKind> {
        match stmt {
            Stmt::Init { lo, hi } => {
                self.universe = Some(Universe::from_range(*lo, *hi)?);
                Ok(None)
            }
            Stmt::Rebind { label, value } => {
                self.universe_mut()?.rebind(*label, *value)?;
                Ok(None)
            }
            Stmt::Stack { label, values } => {
                self.universe_mut()?.stack(*label, values)?;
                Ok(None)
            }
            Stmt::Writeln(expr) => {
                let values = eval_expr(expr, self.universe.as_ref(), &self.config)?;
                Ok(Some(format_results(&values)))
            }
        }
    }

    fn universe_mut(&mut self) -> Result<&mut Universe, EvalErrorKind> {
        self.universe.as_mut().ok_or(EvalErrorKind::NoUniverse)
    }

    /// Runs every statement of `program` in order, stopping at the first error.
    pub fn run(&mut self, program: &Program) -> Result<Vec<String>, (Vec<String>, EvalError)> {
        let mut lines = Vec::new();
        for (stmt_index, stmt) in program.stmts.iter().enumerate() {
            match self.execute(stmt) {
                Ok(Some(line)) => lines.push(line),
                Ok(None) => {}
                Err(kind) => {
                    let error = EvalError {
                        kind,
                        stmt_index,
                        span: program.span_of(stmt_index),
                    };
                    return Err((lines, error));
                }
            }
        }
        Ok(lines)
    }

    fn into_universe(self) -> Universe {
        self.universe.unwrap_or_default()
    }
}

/// Runs a program from an empty state.
pub fn run_program(program: &Program, config: EvalConfig) -> Result<RunOutput, RunFailure> {
    let mut session = Session::new(config);
    match session.run(program) {
        Ok(lines) => Ok(RunOutput {
            lines,
            final_universe: session.into_universe(),
        }),
        Err((lines, error)) => Err(RunFailure {
            error,
            partial: RunOutput {
                lines,
                final_universe: session.into_universe(),
            },
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_program, parse_statements};
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    const EXAMPLE_1: &str = "{
ZoT=(0?9)    ! ZoT is the list of numbers:0 1 2 7 4 5 6 7 8 9 , namely (0?9)
3:=7;
writeln(5+9);    ! Print 5+9
writeln(3+6);    ! Print 7+6
}";

    fn run(src: &str, config: EvalConfig) -> Result<Vec<String>, EvalError> {
        run_program(&parse_program(src).unwrap(), config)
            .map(|o| o.lines)
            .map_err(|f| f.error)
    }

    fn expr(src: &str) -> Expr {
        match parse_statements(&format!("writeln({src})"))
            .unwrap()
            .stmts
            .remove(0)
        {
            Stmt::Writeln(e) => e,
            _ => unreachable!(),
        }
    }

    fn eval_in(
        src: &str,
        u: &Universe,
        black_hole: BlackHolePolicy,
    ) -> Result<Vec<i64>, EvalErrorKind> {
        let config = EvalConfig {
            black_hole,
            ..EvalConfig::default()
        };
        eval_expr(&expr(src), Some(u), &config)
    }

    fn zot(lo: i64, hi: i64) -> Universe {
        Universe::from_range(lo, hi).unwrap()
    }

    fn black_hole_universe() -> Universe {
        let mut u = zot(1, 9);
        u.stack(3, &[18, 13, 15]).unwrap();
        u
    }

    #[test]
    fn listings() {
        assert_eq!(run(EXAMPLE_1, EvalConfig::default()).unwrap(), ["14", "13"]);
        assert_eq!(
            run(
                "{\nZoT=(2?5);\n3:=7;\nwriteln(3+4);\n}",
                EvalConfig::default()
            )
            .unwrap(),
            ["11"]
        );
        let out = run_program(&parse_program(EXAMPLE_1).unwrap(), EvalConfig::default()).unwrap();
        assert_eq!(out.final_universe.to_string(), "0 1 2 7 4 5 6 7 8 9");
    }

    #[test]
    fn arithmetic_errors() {
        let u = zot(0, 9);
        assert_eq!(
            eval_in("6/0", &u, BlackHolePolicy::Error),
            Err(EvalErrorKind::DivisionByZero)
        );
        assert_eq!(
            eval_in("0^0", &u, BlackHolePolicy::Error),
            Err(EvalErrorKind::UndefinedPower)
        );
        assert_eq!(
            eval_in("2^-1", &u, BlackHolePolicy::Error),
            Err(EvalErrorKind::NegativeExponent(-1))
        );
        assert_eq!(eval_in("0/5", &u, BlackHolePolicy::Error), Ok(vec![0]));
        assert_eq!(eval_in("2*3", &u, BlackHolePolicy::Error), Ok(vec![6]));
        assert_eq!(eval_in("0^5", &u, BlackHolePolicy::Error), Ok(vec![0]));
        assert_eq!(eval_in("5^0", &u, BlackHolePolicy::Error), Ok(vec![1]));
        assert_eq!(eval_in("-7/2", &u, BlackHolePolicy::Error), Ok(vec![-3]));
        assert_eq!(eval_in("7/-2", &u, BlackHolePolicy::Error), Ok(vec![-3]));
        assert_eq!(
            eval_in("2^62*2", &u, BlackHolePolicy::Error),
            Err(EvalErrorKind::Overflow)
        );
        assert_eq!(
            eval_in("2^64", &u, BlackHolePolicy::Error),
            Err(EvalErrorKind::Overflow)
        );
        assert_eq!(
            eval_in("1^99999999999", &u, BlackHolePolicy::Error),
            Ok(vec![1])
        );
        assert_eq!(
            eval_in("(0-1)^99999999999", &u, BlackHolePolicy::Error),
            Ok(vec![-1])
        );
        assert_eq!(
            eval_in("-9223372036854775807-1", &u, BlackHolePolicy::Error),
            Ok(vec![i64::MIN])
        );
        assert_eq!(
            eval_in("(-9223372036854775807-1)/-1", &u, BlackHolePolicy::Error),
            Err(EvalErrorKind::Overflow)
        );
        assert_eq!(
            eval_in("-(-9223372036854775807-1)", &u, BlackHolePolicy::Error),
            Err(EvalErrorKind::Overflow)
        );
    }

    #[test]
    fn division_by_rebound_zero() {
        let mut u = zot(0, 9);
        u.rebind(5, 0).unwrap();
        assert_eq!(
            eval_in("6/5", &u, BlackHolePolicy::Error),
            Err(EvalErrorKind::DivisionByZero)
        );
    }

    #[test]
    fn black_hole_policies() {
        let u = black_hole_universe();
        assert_eq!(
            eval_in("3+1", &u, BlackHolePolicy::All),
            Ok(vec![14, 16, 19])
        );
        assert_eq!(eval_in("3+1", &u, BlackHolePolicy::First), Ok(vec![19]));
        assert_eq!(eval_in("3+1", &u, BlackHolePolicy::Last), Ok(vec![16]));
        assert!(matches!(
            eval_in("3+1", &u, BlackHolePolicy::Error),
            Err(EvalErrorKind::BlackHoleOperand { label: 3, .. })
        ));
        // each literal site picks independently
        assert_eq!(
            eval_in("3-3", &u, BlackHolePolicy::All),
            Ok(vec![-5, -3, -2, 0, 2, 3, 5])
        );
        assert_eq!(
            run(
                "{ ZoT=(1?9) 3:=[18,13,15] writeln(3+1) }",
                EvalConfig {
                    black_hole: BlackHolePolicy::All,
                    ..Default::default()
                }
            )
            .unwrap(),
            ["{14, 16, 19}"]
        );
    }

    #[test]
    fn opaque_and_strict() {
        let mut u = zot(0, 9);
        u.insert_opaque(0, "q").unwrap();
        u.rebind(4, 4).unwrap();
        assert_eq!(eval_in("4+1", &u, BlackHolePolicy::Error), Ok(vec![5]));
        let strict = EvalConfig {
            strict: true,
            ..Default::default()
        };
        assert_eq!(
            eval_expr(&expr("4+10"), Some(&u), &strict),
            Err(EvalErrorKind::StrictResolutionError(10))
        );
        assert_eq!(eval_expr(&expr("4+9"), Some(&u), &strict), Ok(vec![13]));
        assert_eq!(
            eval_expr(&expr("1"), None, &strict),
            Err(EvalErrorKind::NoUniverse)
        );
        assert_eq!(
            eval_expr(&expr("1+2"), None, &EvalConfig::default()),
            Ok(vec![3])
        );
    }

    #[test]
    fn opaque_bound_label_is_indeterminate() {
        let mut u = zot(0, 9);
        u.rebind_opaque(4, "q").unwrap();
        assert_eq!(u.to_string(), "0 1 2 3 q 5 6 7 8 9");
        assert_eq!(
            eval_in("4+1", &u, BlackHolePolicy::All),
            Err(EvalErrorKind::IndeterminateOperand {
                label: 4,
                name: OpaqueName::new("q").unwrap()
            })
        );
        assert_eq!(eval_in("5+1", &u, BlackHolePolicy::All), Ok(vec![6]));
    }

    #[test]
    fn plain_data_is_thread_safe() {
        fn check<T: Send + Sync>() {}
        check::<Universe>();
        check::<RunOutput>();
        check::<Session>();
    }

    #[test]
    fn chase_policy_in_programs() {
        let chase = EvalConfig {
            resolution: ResolutionPolicy::chase(),
            ..Default::default()
        };
        let src = "{ ZoT=(0?9); 3:=7; 7:=2; writeln(3) }";
        assert_eq!(run(src, EvalConfig::default()).unwrap(), ["7"]);
        assert_eq!(run(src, chase).unwrap(), ["2"]);
        let err = run("{ ZoT=(0?9); 3:=7; 7:=3; writeln(1+3) }", chase).unwrap_err();
        assert_eq!(
            err.kind,
            EvalErrorKind::Universe(UniverseError::CycleDetected(3))
        );
        assert_eq!(err.kind.name(), "CycleDetected");
    }

    #[test]
    fn program_errors_are_located() {
        let err = run("{ 3:=7 }", EvalConfig::default()).unwrap_err();
        assert_eq!(err.kind, EvalErrorKind::NoUniverse);
        assert_eq!((err.stmt_index, err.span), (0, Span::new(1, 3)));

        let failure = run_program(
            &parse_program("{\nZoT=(0?9)\nwriteln(1)\nwriteln(6/0)\nwriteln(2)\n}").unwrap(),
            EvalConfig::default(),
        )
        .unwrap_err();
        assert_eq!(failure.error.kind, EvalErrorKind::DivisionByZero);
        assert_eq!(failure.error.stmt_index, 2);
        assert_eq!(failure.error.span, Span::new(4, 1));
        assert_eq!(failure.partial.lines, ["1"]);

        let err = run("{ ZoT=(0?9) 12:=1 }", EvalConfig::default()).unwrap_err();
        assert_eq!(err.kind.name(), "UnknownLabel");
    }

    #[test]
    fn init_replaces_universe() {
        let out = run_program(
            &parse_program("{ ZoT=(0?9) 3:=7 ZoT=(0?4) writeln(3) }").unwrap(),
            EvalConfig::default(),
        )
        .unwrap();
        assert_eq!(out.lines, ["3"]);
        assert_eq!(out.final_universe.to_string(), "0 1 2 3 4");
        assert_eq!(
            run("{}", EvalConfig::default()).unwrap(),
            Vec::<String>::new()
        );
    }

    #[test]
    fn session_keeps_universe_on_error() {
        let mut s = Session::default();
        s.execute(&Stmt::Init { lo: 0, hi: 9 }).unwrap();
        s.execute(&Stmt::Rebind { label: 3, value: 7 }).unwrap();
        assert!(s
            .execute(&Stmt::Stack {
                label: 3,
                values: vec![]
            })
            .is_err());
        assert!(s.execute(&Stmt::Init { lo: 9, hi: 0 }).is_err());
        assert_eq!(s.universe().unwrap().to_string(), "0 1 2 7 4 5 6 7 8 9");
    }

    #[test]
    fn config_names() {
        assert_eq!("all".parse::<BlackHolePolicy>(), Ok(BlackHolePolicy::All));
        assert!("ALL".parse::<BlackHolePolicy>().is_err());
        assert_eq!(
            EvalConfig::default().to_string(),
            "resolution=single black-hole=error strict=false"
        );
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = (0i64..12).prop_map(Expr::IntLit);
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Expr::negate),
                (
                    prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul)],
                    inner.clone(),
                    inner
                )
                    .prop_map(|(op, l, r)| Expr::binary(op, l, r)),
            ]
        })
    }

    proptest! {
        #[test]
        fn all_policy_without_black_holes_is_singleton(e in arb_expr(), binds in proptest::collection::vec((0i64..10, -5i64..20), 0..4)) {
            let mut u = zot(0, 9);
            for (a, b) in binds {
                u.rebind(a, b).unwrap();
            }
            let strict = eval_in(&e.to_string(), &u, BlackHolePolicy::Error);
            let all = eval_in(&e.to_string(), &u, BlackHolePolicy::All);
            prop_assert_eq!(&strict, &all);
            if let Ok(v) = strict {
                prop_assert_eq!(v.len(), 1);
            }
        }

        #[test]
        fn evaluation_is_deterministic(e in arb_expr()) {
            let u = black_hole_universe();
            let a = eval_in(&e.to_string(), &u, BlackHolePolicy::All);
            let b = eval_in(&e.to_string(), &u, BlackHolePolicy::All);
            prop_assert_eq!(a, b);
        }
    }
}
