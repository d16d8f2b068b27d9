//! End-to-end tests of the `dfvs` binary: exit codes, output shapes, and
//! file handling.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_dfvs"))
        .args(args)
        .output()
        .expect("binary should run");
    Run {
        code: out.status.code().expect("no signal"),
        stdout: String::from_utf8(out.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf8 stderr"),
    }
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path: PathBuf = dir.join(name);
    fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

const TRIANGLE: &str = "3 3\n1 2\n2 3\n3 1\n";
const TWO_CYCLE: &str = "2 2\n1 2\n2 1\n";
const PATH3: &str = "3 2\n1 2\n2 3\n";

#[test]
fn solve_triangle_within_budget() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.txt", TRIANGLE);
    let r = run(&["solve", "--input", &input, "--k", "1", "--verify"]);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("SIZE 1"));
    let id: usize = lines.next().unwrap().parse().unwrap();
    assert!((1..=3).contains(&id));
    assert_eq!(lines.next(), None);
}

#[test]
fn solve_triangle_zero_budget_says_no() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.txt", TRIANGLE);
    let r = run(&["solve", "--input", &input, "--k", "0"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, "NO\n");
}

#[test]
fn solve_rejects_zero_based_ids() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.txt", "2 1\n0 1\n");
    let r = run(&["solve", "--input", &input, "--k", "1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "stderr: {}", r.stderr);
    assert!(r.stderr.contains("out of range"));
}

#[test]
fn solve_rejects_missing_file_bad_eps_and_oversized_k() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.txt", TRIANGLE);
    let missing = dir.path().join("absent.txt");
    assert_eq!(run(&["solve", "--input", missing.to_str().unwrap(), "--k", "1"]).code, 2);
    assert_eq!(run(&["solve", "--input", &input, "--k", "1", "--eps", "0.5"]).code, 2);
    assert_eq!(run(&["solve", "--input", &input, "--k", "65"]).code, 2);
}

#[test]
fn solve_minimize_reports_the_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.txt", "4 4\n1 2\n2 1\n3 4\n4 3\n");
    let r = run(&["solve", "--input", &input, "--k", "4", "--minimize"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("SIZE 2\n"), "stdout: {}", r.stdout);
}

#[test]
fn solve_with_scc_split_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.txt", "4 4\n1 2\n2 1\n3 4\n4 3\n");
    let r = run(&["solve", "--input", &input, "--k", "2", "--scc-split", "--verify"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("SIZE 2\n"));
}

#[test]
fn stats_report_has_the_pinned_key_order() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.txt", TWO_CYCLE);
    let stats = dir.path().join("stats.txt");
    let r = run(&[
        "solve",
        "--input",
        &input,
        "--k",
        "1",
        "--stats",
        stats.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    let text = fs::read_to_string(&stats).unwrap();
    let keys: Vec<&str> = text.lines().map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(
        keys,
        vec![
            "nodes",
            "leaves",
            "max_depth",
            "cut_size_histogram",
            "reduction_removals",
            "leaf_bound",
            "gamma_eps",
            "wall_time_ms"
        ]
    );
    assert!(text.contains("leaf_bound 2\n"));
    assert!(text.contains("gamma_eps 1.754765\n"));
}

#[test]
fn dfasv_command_examples() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.txt", TWO_CYCLE);
    let hint = write(dir.path(), "w.txt", "1\n");
    let empty_hint = write(dir.path(), "e.txt", "");

    let r = run(&["dfas-v", "--input", &input, "--hint", &hint, "--k", "1"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "SIZE 1");
    assert!(lines[1] == "1 2 1" || lines[1] == "2 1 1");

    let r = run(&["dfas-v", "--input", &input, "--hint", &hint, "--k", "0"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, "NO\n");

    let r = run(&["dfas-v", "--input", &input, "--hint", &empty_hint, "--k", "1"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not a feedback vertex set"), "stderr: {}", r.stderr);
}

#[test]
fn compress_command_examples() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.txt", TWO_CYCLE);
    let hint = write(dir.path(), "w.txt", "1\n");
    let both = write(dir.path(), "w2.txt", "1 2\n");

    let r = run(&["compress", "--input", &input, "--hint", &hint, "--k", "1"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("SIZE 1\n"));

    let r = run(&["compress", "--input", &input, "--hint", &hint, "--k", "0"]);
    assert_eq!(r.code, 1);

    let r = run(&["compress", "--input", &input, "--hint", &both, "--k", "0"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("more than budget"), "stderr: {}", r.stderr);
}

#[test]
fn impcuts_command_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path3 = write(dir.path(), "p.txt", PATH3);
    let r = run(&["impcuts", "--input", &path3, "--x", "1", "--y", "3", "--k", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "1\n2 3 1\n");

    // Y unreachable: the empty cut is the only important cut
    let iso = write(dir.path(), "iso.txt", "2 0\n");
    let r = run(&["impcuts", "--input", &iso, "--x", "1", "--y", "2", "--k", "3"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "1\n\n");

    // reachable but budget zero: no cuts at all
    let single = write(dir.path(), "s.txt", "2 1\n1 2\n");
    let r = run(&["impcuts", "--input", &single, "--x", "1", "--y", "2", "--k", "0"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "0\n");

    let r = run(&["impcuts", "--input", &path3, "--x", "1", "--y", "1", "--k", "1"]);
    assert_eq!(r.code, 2);
}

#[test]
fn gen_is_deterministic_and_respects_parameters() {
    let a = run(&["gen", "--kind", "erdos-renyi", "--n", "8", "--p", "0.4", "--seed", "9"]);
    let b = run(&["gen", "--kind", "erdos-renyi", "--n", "8", "--p", "0.4", "--seed", "9"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);

    let empty = run(&["gen", "--kind", "erdos-renyi", "--n", "5", "--p", "0"]);
    assert_eq!(empty.stdout, "5 0\n");

    let full = run(&["gen", "--kind", "erdos-renyi", "--n", "3", "--p", "1"]);
    assert!(full.stdout.starts_with("3 6\n"));

    let t = run(&["gen", "--kind", "tournament", "--n", "7", "--seed", "2"]);
    assert!(t.stdout.starts_with("7 21\n"));

    let r = run(&["gen", "--kind", "planted-dfvs", "--n", "10", "--p", "0.2"]);
    assert_eq!(r.code, 2, "missing --planted-k must be an error");

    let r = run(&["gen", "--kind", "erdos-renyi", "--n", "4", "--p", "1.5"]);
    assert_eq!(r.code, 2);
}

#[test]
fn verify_command_examples() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "t.txt", TRIANGLE);
    let dag = write(dir.path(), "d.txt", PATH3);
    let one = write(dir.path(), "w1.txt", "1\n");
    let empty = write(dir.path(), "w0.txt", "");

    let r = run(&["verify", "--input", &tri, "--witness", &one, "--mode", "dfvs"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "VALID\n");

    let r = run(&["verify", "--input", &tri, "--witness", &empty, "--mode", "dfvs"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, "INVALID\n");

    let r = run(&["verify", "--input", &dag, "--witness", &empty, "--mode", "dfvs"]);
    assert_eq!(r.code, 0);

    let cyc = write(dir.path(), "c.txt", TWO_CYCLE);
    let arc = write(dir.path(), "a.txt", "1 2 1\n");
    let r = run(&["verify", "--input", &cyc, "--witness", &arc, "--mode", "dfas"]);
    assert_eq!(r.code, 0);

    let bad = write(dir.path(), "bad.txt", "1 2 9\n");
    let r = run(&["verify", "--input", &cyc, "--witness", &bad, "--mode", "dfas"]);
    assert_eq!(r.code, 2);
}

#[test]
fn solution_output_feeds_back_into_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = run(&["gen", "--kind", "erdos-renyi", "--n", "6", "--p", "0.3", "--seed", "3"]);
    let input = write(dir.path(), "g.txt", &g.stdout);
    let solved = run(&["solve", "--input", &input, "--k", "6", "--minimize", "--verify"]);
    assert_eq!(solved.code, 0);
    let witness_text: String = solved
        .stdout
        .lines()
        .skip(1)
        .map(|l| format!("{l}\n"))
        .collect();
    let witness = write(dir.path(), "w.txt", &witness_text);
    let v = run(&["verify", "--input", &input, "--witness", &witness, "--mode", "dfvs"]);
    assert_eq!(v.code, 0);
    assert_eq!(v.stdout, "VALID\n");
}

#[test]
fn usage_errors_exit_2_and_help_exits_0() {
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["solve"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["nonsense"]).code, 2);
}
