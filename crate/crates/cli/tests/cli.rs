//! End-to-end tests against the built binary, on the bug-tracker example
//! with ISO-date ticks (day numbers: 2019-01-26 = 737085, 2019-08-16 =
//! 737287).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ongoing"))
}

fn write_example_data(dir: &Path) {
    fs::write(
        dir.join("B.csv"),
        "BID:int,C:text,VT:ointerval\n\
         500,Spam filter,\"[2019-01-25,now)\"\n",
    )
    .unwrap();
    fs::write(
        dir.join("P.csv"),
        "PID:int,C:text,VT:ointerval\n\
         201,Spam filter,\"[2019-08-15,2019-08-24)\"\n",
    )
    .unwrap();
    fs::write(
        dir.join("L.csv"),
        "Name:text,C:text,VT:ointerval\n\
         Ann,Spam filter,\"[2019-01-20,2019-08-18)\"\n\
         Bob,Spam filter,\"[2019-08-18,now)\"\n",
    )
    .unwrap();
}

fn run_ok(cmd: &mut Command) -> Output {
    let output = cmd.output().expect("spawn binary");
    assert!(
        output.status.success(),
        "command failed: {}\n{}",
        output.status,
        String::from_utf8_lossy(&output.stderr)
    );
    output
}

const JOIN_QUERY: &str = "select C = 'Spam filter' (B) join B.C = P.C and B.VT before P.VT P";

#[test]
fn query_reproduces_the_join_reference_time() {
    let dir = TempDir::new().unwrap();
    write_example_data(dir.path());
    let output = run_ok(bin().args([
        "query",
        "--data",
        dir.path().to_str().unwrap(),
        "-e",
        JOIN_QUERY,
        "--ticks",
        "date",
    ]));
    let stdout = String::from_utf8(output.stdout).unwrap();
    // RT = {[1/26, 8/16)} in dates.
    assert!(
        stdout.contains("{[2019-01-26,2019-08-16)}"),
        "unexpected output:\n{stdout}"
    );
}

#[test]
fn bind_drops_rows_outside_their_reference_time() {
    let dir = TempDir::new().unwrap();
    write_example_data(dir.path());
    let result_path = dir.path().join("V.csv");
    run_ok(bin().args([
        "query",
        "--data",
        dir.path().to_str().unwrap(),
        "-e",
        JOIN_QUERY,
        "--out",
        result_path.to_str().unwrap(),
    ]));

    // Inside the reference time the row is there, with now bound.
    let inside = run_ok(bin().args([
        "bind",
        result_path.to_str().unwrap(),
        "--rt",
        "2019-08-15",
        "--ticks",
        "date",
    ]));
    let inside = String::from_utf8(inside.stdout).unwrap();
    assert_eq!(inside.lines().count(), 2, "header plus one row:\n{inside}");
    assert!(inside.contains("[2019-01-25,2019-08-15)"));

    // One tick later the reference time has run out.
    let outside = run_ok(bin().args([
        "bind",
        result_path.to_str().unwrap(),
        "--rt",
        "2019-08-16",
    ]));
    let outside = String::from_utf8(outside.stdout).unwrap();
    assert_eq!(outside.lines().count(), 1, "header only:\n{outside}");

    // Binding a base relation keeps every row at any reference time.
    let base = run_ok(bin().args([
        "bind",
        dir.path().join("L.csv").to_str().unwrap(),
        "--rt",
        "1997-01-01",
    ]));
    assert_eq!(String::from_utf8(base.stdout).unwrap().lines().count(), 3);
}

#[test]
fn check_passes_and_fails_loudly() {
    let dir = TempDir::new().unwrap();
    write_example_data(dir.path());
    let output = run_ok(bin().args([
        "check",
        "--data",
        dir.path().to_str().unwrap(),
        "-e",
        JOIN_QUERY,
    ]));
    assert!(String::from_utf8(output.stdout).unwrap().starts_with("PASS"));

    // Unknown relations are load-time errors with a nonzero exit.
    let bad = bin()
        .args(["check", "--data", dir.path().to_str().unwrap(), "-e", "Nope"])
        .output()
        .unwrap();
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("unknown relation"));
}

#[test]
fn data_dir_env_var_is_the_fallback() {
    let dir = TempDir::new().unwrap();
    write_example_data(dir.path());
    let output = run_ok(bin().env("ONGOING_DATA_DIR", dir.path()).args([
        "query",
        "-e",
        "project BID (B)",
    ]));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.starts_with("BID:int,RT"));

    let missing = bin()
        .env_remove("ONGOING_DATA_DIR")
        .args(["query", "-e", "B"])
        .output()
        .unwrap();
    assert!(!missing.status.success());
}

#[test]
fn malformed_csv_is_a_load_error() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("B.csv"), "BID:int\nnot-a-number\n").unwrap();
    let output = bin()
        .args(["query", "--data", dir.path().to_str().unwrap(), "-e", "B"])
        .output()
        .unwrap();
    assert!(!output.status.success());
}

#[test]
fn query_over_empty_relation_emits_header_only() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("E.csv"), "K:int,VT:ointerval\n").unwrap();
    let output = run_ok(bin().args([
        "query",
        "--data",
        dir.path().to_str().unwrap(),
        "-e",
        "select VT overlaps [1, 5) (E)",
    ]));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1);
    assert!(stdout.starts_with("E.K:int,E.VT:ointerval,RT"));
}

fn generate_args(dir: &Path, name: &str, seed: &str) -> Vec<String> {
    [
        "generate",
        "--out",
        dir.join(name).to_str().unwrap(),
        "--rows",
        "400",
        "--pct-ongoing",
        "25",
        "--shape",
        "expanding",
        "--span",
        "1000",
        "--seed",
        seed,
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

#[test]
fn generate_is_seeded_and_deterministic() {
    let dir = TempDir::new().unwrap();
    run_ok(bin().args(generate_args(dir.path(), "a.csv", "7")));
    run_ok(bin().args(generate_args(dir.path(), "b.csv", "7")));
    run_ok(bin().args(generate_args(dir.path(), "c.csv", "8")));
    let a = fs::read(dir.path().join("a.csv")).unwrap();
    let b = fs::read(dir.path().join("b.csv")).unwrap();
    let c = fs::read(dir.path().join("c.csv")).unwrap();
    assert_eq!(a, b, "same seed must be byte-identical");
    assert_ne!(a, c);
    // 25% of 400 rows carry an ongoing interval.
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.matches("now)").count(), 100);
}

fn bench_dir() -> (TempDir, TempDir) {
    let dir = TempDir::new().unwrap();
    run_ok(bin().args(generate_args(dir.path(), "R.csv", "7")));
    // Reports live outside the data directory so they are not picked up as
    // relations on the next load.
    (dir, TempDir::new().unwrap())
}

#[test]
fn bench_writes_a_report_with_break_even() {
    let (dir, reports) = bench_dir();
    let report = reports.path().join("report.csv");
    run_ok(bin().args([
        "bench",
        "--data",
        dir.path().to_str().unwrap(),
        "-e",
        "select vt overlaps [900, 1000) (R)",
        "--repetitions",
        "2",
        "--out",
        report.to_str().unwrap(),
    ]));
    let text = fs::read_to_string(&report).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("mode,wall_time_median,result_rows,break_even_n,rt")
    );
    let ongoing_row = lines.next().unwrap();
    assert!(ongoing_row.starts_with("ongoing,"));
    let fields: Vec<&str> = ongoing_row.split(',').collect();
    assert!(!fields[3].is_empty(), "break_even_n reported: {ongoing_row}");
    let bind_row = lines.next().unwrap();
    assert!(bind_row.starts_with("bind,"));

    // Identical inputs produce identical reports up to the timing column.
    let strip = |text: &str| -> Vec<String> {
        text.lines()
            .map(|l| {
                let mut fields: Vec<&str> = l.split(',').collect();
                if fields.len() > 1 {
                    fields[1] = "t";
                }
                fields.join(",")
            })
            .collect()
    };
    let report2 = reports.path().join("report2.csv");
    run_ok(bin().args([
        "bench",
        "--data",
        dir.path().to_str().unwrap(),
        "-e",
        "select vt overlaps [900, 1000) (R)",
        "--repetitions",
        "2",
        "--out",
        report2.to_str().unwrap(),
    ]));
    assert_eq!(strip(&text), strip(&fs::read_to_string(&report2).unwrap()));
}

#[test]
fn bench_rejects_zero_repetitions() {
    let (dir, reports) = bench_dir();
    let report = reports.path().join("report.csv");
    let output = bin()
        .args([
            "bench",
            "--data",
            dir.path().to_str().unwrap(),
            "-e",
            "R",
            "--repetitions",
            "0",
            "--out",
            report.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("repetitions"));
}
