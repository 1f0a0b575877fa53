use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use zoli_core::{parse_statements, Session};

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

fn zoli() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zoli"));
    cmd.env_remove("ZOLI_BLACK_HOLE");
    cmd
}

fn run(args: &[&str]) -> Output {
    zoli().args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = zoli()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

fn stderr(o: &Output) -> &str {
    std::str::from_utf8(&o.stderr).unwrap()
}

fn script(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn runs_the_example_scripts() {
    let o = run(&["run", example("ex1.zoli").to_str().unwrap()]);
    assert_eq!(
        (o.status.code(), stdout(&o), stderr(&o)),
        (Some(0), "14\n13\n", "")
    );
    let o = run(&["run", example("ex2.zoli").to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "11\n"));
}

#[test]
fn show_universe_is_the_last_line() {
    let o = run(&[
        "run",
        example("ex1.zoli").to_str().unwrap(),
        "--show-universe",
    ]);
    assert_eq!(stdout(&o), "14\n13\nZoT: 0 1 2 7 4 5 6 7 8 9\n");
}

#[test]
fn missing_script_is_a_usage_error() {
    let o = run(&["run", "missing.zoli"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stderr(&o).starts_with("error[Io]: missing.zoli"),
        "{}",
        stderr(&o)
    );
    assert_eq!(stdout(&o), "");
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = script(&dir, "bad.zoli", "{\n(ZoT=(0?9)\n}\n");
    let o = run(&["run", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        stderr(&o),
        "error[ParseError] line 2, col 1: expected statement, found '('\n"
    );
    let path = script(&dir, "open.zoli", "{\nZoT=(0?9)\n");
    let o = run(&["run", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[UnbalancedBraces] line 3, col 1"));
}

#[test]
fn runtime_errors_exit_1_after_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = script(
        &dir,
        "div.zoli",
        "{\nZoT=(0?9)\nwriteln(1)\nwriteln(6/0)\nwriteln(2)\n}\n",
    );
    let o = run(&["run", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "1\n");
    assert_eq!(
        stderr(&o),
        "error[DivisionByZero] line 4, col 1: division by zero (statement 3)\n"
    );
    let path = script(&dir, "pow.zoli", "{ writeln(0^0) }");
    let o = run(&["run", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[UndefinedPower] line 1, col 3"));
    let path = script(&dir, "nouni.zoli", "{ 3:=7 }");
    assert!(stderr(&run(&["run", &path])).starts_with("error[NoUniverse]"));
}

#[test]
fn black_hole_policy_flags_and_env() {
    let bh = example("blackhole.zoli");
    let bh = bh.to_str().unwrap();
    let o = run(&["run", bh]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).starts_with("error[BlackHoleOperand] line 6, col 1"),
        "{}",
        stderr(&o)
    );

    assert_eq!(
        stdout(&run(&["run", bh, "--black-hole", "all"])),
        "{14, 16, 19}\n"
    );
    assert_eq!(stdout(&run(&["run", bh, "--black-hole", "first"])), "19\n");
    assert_eq!(stdout(&run(&["run", bh, "--black-hole", "last"])), "16\n");

    let o = zoli()
        .args(["run", bh])
        .env("ZOLI_BLACK_HOLE", "first")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "19\n");
    let o = zoli()
        .args(["run", bh, "--black-hole", "last"])
        .env("ZOLI_BLACK_HOLE", "first")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "16\n");
    let o = zoli()
        .args(["run", bh])
        .env("ZOLI_BLACK_HOLE", "sideways")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn resolution_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = script(&dir, "chase.zoli", "{ ZoT=(0?9); 3:=7; 7:=2; writeln(3) }");
    assert_eq!(stdout(&run(&["run", &path])), "7\n");
    assert_eq!(
        stdout(&run(&["run", &path, "--resolution", "chase"])),
        "2\n"
    );
    let o = run(&["run", &path, "--resolution", "chase", "--chase-depth", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[ChaseDepthExceeded]"));
    assert_eq!(
        run(&["run", &path, "--chase-depth", "0"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["run", &path, "--bogus"]).status.code(), Some(3));

    let path = script(&dir, "strict.zoli", "{ ZoT=(0?9); writeln(10) }");
    assert_eq!(stdout(&run(&["run", &path])), "10\n");
    let o = run(&["run", &path, "--strict"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[StrictResolutionError]"));
}

#[test]
fn primes_subcommand() {
    let o = run(&[
        "primes", "--range", "0..9", "--rebind", "3=7", "--delete", "0", "--check", "9",
    ]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "true\n"));
    let o = run(&[
        "primes", "--range", "1..9", "--opaque", "q@0", "--check", "1",
    ]);
    assert_eq!(stdout(&o), "false\n");
    let o = run(&[
        "primes", "--range", "0..9", "--rebind", "3=7", "--delete", "0",
    ]);
    assert_eq!(stdout(&o), "1 2 7 5 9\n");
    let o = run(&["primes", "--range", "1..9", "--opaque", "q@0"]);
    assert_eq!(stdout(&o), "\n");
    let o = run(&["primes", "--range", "1..9", "--stack", "3=[18,13,15]"]);
    assert_eq!(stdout(&o), "1 2 13 5 7 9\n");

    let o = run(&["primes", "--range", "0..9", "--delete", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[IndexOutOfBounds]"));
    assert_eq!(
        run(&["primes", "--range", "0..9", "--opaque", "Q@0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["primes", "--range", "0..9", "--rebind", "3:7"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn bij_subcommand() {
    let o = run(&["bij", "encode", "104", "--base", "9"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "125\n"));
    let o = run(&["bij", "decode", "125", "--base", "9"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "104\n"));
    let o = run(&["bij", "encode", "0", "--base", "9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[DomainError]"));
    let o = run(&["bij", "decode", "120", "--base", "9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[InvalidDigit]"));
}

#[test]
fn bij_encode_decode_compose() {
    for base in ["2", "9", "36"] {
        for n in [1, 2, 9, 10, 35, 36, 37, 104, 1295, 99_999, i64::MAX] {
            let n = n.to_string();
            let enc = run(&["bij", "encode", &n, "--base", base]);
            let digits = stdout(&enc).trim_end().to_string();
            let dec = run(&["bij", "decode", &digits, "--base", base]);
            assert_eq!(stdout(&dec).trim_end(), n, "base {base}");
        }
    }
}

#[test]
fn repl_over_a_pipe() {
    let o = with_stdin(
        &["repl"],
        "ZoT=(0?9)\n3:=7\n:universe\nwriteln(3+6)\n:quit\n",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "ZoT: 0 1 2 7 4 5 6 7 8 9\n13\n");
    assert_eq!(stderr(&o), "");

    let o = with_stdin(
        &["repl", "--black-hole", "all"],
        "ZoT=(1?9)\n3:=[18,13,15]\nwriteln(3+1)\n:primes\n",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{14, 16, 19}\n1 2 13 5 7 9\n");

    let o = with_stdin(&["repl"], "writeln(1/0)\nwriteln(2)\n");
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "2\n"));
    assert!(stderr(&o).starts_with("error[DivisionByZero] line 1"));
}

#[test]
fn repl_universe_matches_library() {
    // a fixed edit script, checked against the same statements run through Session
    let edits = [
        "ZoT=(0?12)",
        "3:=7",
        "7:=[1,2,3]",
        "12:=-4",
        "3:=[9]",
        "0:=100",
        "5:=[5,5]",
    ];
    let mut input = String::new();
    let mut session = Session::default();
    let mut expected = String::new();
    for e in edits {
        input.push_str(e);
        input.push_str("\n:universe\n");
        for stmt in parse_statements(e).unwrap().stmts {
            session.execute(&stmt).unwrap();
        }
        expected.push_str(&format!("ZoT: {}\n", session.universe().unwrap()));
    }
    let o = with_stdin(&["repl"], &input);
    assert_eq!(stdout(&o), expected);
}
