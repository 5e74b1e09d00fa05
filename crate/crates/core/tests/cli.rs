use std::io::Write;
use std::process::{Command, Output, Stdio};

fn gridsat(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gridsat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const CONTRADICTION: &str = "p cnf 1 2\n1 0\n-1 0\n";
const TWO_CLAUSES: &str = "c (x1 | x2) & -x1\np cnf 2 2\n1 2 0\n-1 0\n";

#[test]
fn solve_and_oracle_agree_on_examples() {
    for cmd in ["solve", "oracle"] {
        let o = gridsat(&[cmd], CONTRADICTION);
        assert_eq!(o.status.code(), Some(20), "{cmd}");
        assert_eq!(stdout(&o), "s UNSATISFIABLE\n");

        let o = gridsat(&[cmd, "-"], TWO_CLAUSES);
        assert_eq!(o.status.code(), Some(10), "{cmd}");
        assert_eq!(stdout(&o), "s SATISFIABLE\nv -1 2 0\n");
    }
}

#[test]
fn reads_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.cnf");
    std::fs::write(&path, TWO_CLAUSES).unwrap();
    let o = gridsat(&["solve", "--variant", "square", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(10));
}

#[test]
fn missing_file_and_bad_flags_exit_one() {
    assert_eq!(gridsat(&["solve", "/nonexistent/f.cnf"], "").status.code(), Some(1));
    assert_eq!(gridsat(&["solve", "--variant", "cubic"], "").status.code(), Some(1));
    assert_eq!(gridsat(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(gridsat(&["--help"], "").status.code(), Some(0));
}

#[test]
fn oracle_guard() {
    let o = gridsat(&["oracle"], "p cnf 31 1\n31 0\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
}

#[test]
fn warnings_stay_off_stdout() {
    let o = gridsat(&["solve"], "p cnf 2 3\n1 -1 0\n2 2 0\n");
    assert_eq!(o.status.code(), Some(10));
    assert_eq!(stdout(&o), "s SATISFIABLE\nv -1 2 0\n");
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("warning"));
}

#[test]
fn trace_snapshot_counts() {
    let o = gridsat(&["trace"], CONTRADICTION);
    let snapshots = stdout(&o).lines().filter(|l| l.starts_with("sweep ")).count();
    assert!((1..=3).contains(&snapshots));

    let o = gridsat(&["trace", "--variant", "async"], "p cnf 3 1\n1 2 3 0\n");
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("sweep ")).count(), 2);
}

#[test]
fn trace_is_monotone() {
    let f = "p cnf 4 6\n1 2 3 0\n-1 2 0\n-2 3 4 0\n-3 -4 0\n1 -4 0\n-2 -3 0\n";
    for variant in ["basic", "async", "triangular", "square"] {
        let o = gridsat(&["trace", "--variant", variant], f);
        let text = stdout(&o);
        let ones: Vec<usize> = text
            .split("sweep ")
            .skip(1)
            .map(|snap| {
                snap.lines()
                    .filter(|l| l.starts_with("box "))
                    .map(|l| l.rsplit(' ').next().unwrap().matches('1').count())
                    .sum()
            })
            .collect();
        assert!(ones.len() >= 2, "{variant}");
        assert!(ones.windows(2).all(|w| w[1] <= w[0]), "{variant}: {ones:?}");
    }
}

#[test]
fn audit_is_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        let o = gridsat(
            &["audit", "--count", "25", "--seed", "9", "--max-vars", "8", "--json", "--out", out.to_str().unwrap()],
            "",
        );
        assert_eq!(o.status.code(), Some(0));
        (stdout(&o), std::fs::read(out.join("audit_records.csv")).unwrap())
    };
    let (a, b) = (run("a"), run("b"));
    assert_eq!(a, b);
    let report: serde_json::Value = serde_json::from_str(&a.0).unwrap();
    assert_eq!(report["soundness"]["ok"], true);
    assert!(!report["iterations"]["histogram"].as_object().unwrap().is_empty());
}

#[test]
fn zero_count_audit() {
    let dir = tempfile::tempdir().unwrap();
    let o = gridsat(&["audit", "--count", "0", "--out", dir.path().to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("audit_report.json").is_file());
}

#[test]
fn invalid_audit_flags_exit_one() {
    let o = gridsat(&["audit", "--count", "1", "--min-vars", "9", "--max-vars", "4"], "");
    assert_eq!(o.status.code(), Some(1));
}
