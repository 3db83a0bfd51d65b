use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn concise(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concise")).args(args).output().unwrap()
}

fn concise_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_concise"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn encode(dir: &Path, name: &str, values: &str, format: &str) -> String {
    let path = dir.join(name).to_str().unwrap().to_owned();
    stdout(&concise_stdin(&["encode", "--format", format, "-o", &path], values));
    path
}

#[test]
fn inspect_matches_golden() {
    let dir = TempDir::new().unwrap();
    let file = encode(dir.path(), "a.bin", "1023\n0\n93\n", "concise");
    let golden = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/inspect_0_93_1023.txt")).unwrap();
    assert_eq!(stdout(&concise(&["inspect", &file])), golden);
}

#[test]
fn wah_inspect_has_no_position() {
    let dir = TempDir::new().unwrap();
    let file = encode(dir.path(), "w.bin", "93\n", "wah");
    assert_eq!(
        stdout(&concise(&["inspect", &file])),
        "WAH words=2 cardinality=1 max=93\n#0 00000003 fill 0's, blocks=3 [0..=92]\n#1 80000001 literal, bits=1 [93..=123]\n"
    );
}

#[test]
fn encode_decode_round_trip() {
    let dir = TempDir::new().unwrap();
    for format in ["concise", "wah"] {
        let file = encode(dir.path(), "s.bin", "5\n\n31\n5\n1040187422\n", format);
        assert_eq!(stdout(&concise(&["decode", &file])), "5\n31\n1040187422\n");
    }
}

#[test]
fn empty_input_gives_empty_set_file() {
    let dir = TempDir::new().unwrap();
    let file = encode(dir.path(), "e.bin", "", "concise");
    let bytes = fs::read(&file).unwrap();
    assert_eq!(bytes, [b'C', b'N', b'C', b'S', 1, 0, 0, 0, 0, 0, 0xFF, 0xFF, 0xFF, 0xFF]);
    assert_eq!(stdout(&concise(&["decode", &file])), "");
}

#[test]
fn out_of_range_input_fails() {
    let out = concise_stdin(&["encode"], "1040187423\n");
    assert_eq!(out.status.code(), Some(1));
    let out = concise_stdin(&["encode"], "seven\n");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn op_results_match_set_algebra() {
    let dir = TempDir::new().unwrap();
    for format in ["concise", "wah"] {
        let a = encode(dir.path(), "a.bin", "1\n2\n3\n100\n5000\n", format);
        let b = encode(dir.path(), "b.bin", "2\n3\n4\n5000\n70000\n", format);
        let r = dir.path().join("r.bin").to_str().unwrap().to_owned();
        for (op, expected) in [
            ("and", "2\n3\n5000\n"),
            ("or", "1\n2\n3\n4\n100\n5000\n70000\n"),
            ("xor", "1\n4\n100\n70000\n"),
            ("andnot", "1\n100\n"),
        ] {
            stdout(&concise(&["op", "--op", op, &a, &b, "-o", &r]));
            assert_eq!(stdout(&concise(&["decode", &r])), expected, "{format} {op}");
        }
    }
}

#[test]
fn op_rejects_mixed_encodings_and_garbage() {
    let dir = TempDir::new().unwrap();
    let a = encode(dir.path(), "a.bin", "1\n", "concise");
    let w = encode(dir.path(), "w.bin", "1\n", "wah");
    assert_eq!(concise(&["op", "--op", "and", &a, &w]).status.code(), Some(1));
    let junk = dir.path().join("junk.bin");
    fs::write(&junk, b"not a set").unwrap();
    assert_eq!(concise(&["inspect", junk.to_str().unwrap()]).status.code(), Some(1));
    let mut truncated = fs::read(&a).unwrap();
    truncated.pop();
    fs::write(&junk, truncated).unwrap();
    assert_eq!(concise(&["decode", junk.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn generate_is_deterministic() {
    let args = ["generate", "--cardinality", "1000", "--density", "0.01", "--seed", "7"];
    let first = stdout(&concise(&args));
    assert_eq!(first, stdout(&concise(&args)));
    let values: Vec<u32> = first.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 1000);
    assert!(values.windows(2).all(|w| w[0] < w[1]));
    assert!(*values.last().unwrap() < 100_000);
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

#[test]
fn bench_words_per_element() {
    let text = stdout(&concise(&[
        "bench", "--dist", "uniform", "--cardinality", "10000", "--density", "1e-4", "--metric", "words",
        "--structures", "concise,wah",
    ]));
    let rows = csv_rows(&text);
    assert_eq!(
        rows[0],
        ["structure", "distribution", "cardinality", "density_or_maxratio", "skew", "seed", "metric", "value", "repetitions"]
    );
    assert_eq!(rows.len(), 3);
    let value = |i: usize| rows[i][7].parse::<f64>().unwrap();
    assert_eq!(rows[1][0], "concise");
    assert!((value(1) - 1.0).abs() <= 0.1, "{}", value(1));
    assert_eq!(rows[2][0], "wah");
    assert!((value(2) - 2.0).abs() <= 0.1, "{}", value(2));
}

#[test]
fn bench_dense_concise_beats_bitmap() {
    let text = stdout(&concise(&[
        "bench", "--density", "1.0", "--cardinality", "5000", "--metric", "words", "--structures", "concise,bitmap",
    ]));
    let rows = csv_rows(&text);
    let concise_wpe: f64 = rows[1][7].parse().unwrap();
    let bitmap_wpe: f64 = rows[2][7].parse().unwrap();
    assert!(concise_wpe <= bitmap_wpe);
}

#[test]
fn bench_cross_product_and_parallel_agree() {
    let args = [
        "bench", "--dist", "uniform,zipf", "--cardinality", "500,1000", "--density", "0.01,0.1", "--max-ratio", "10",
        "--seed", "1,2", "--metric", "words", "--structures", "concise,wah",
    ];
    let sequential = stdout(&concise(&args));
    // (2 densities + 1 zipf point) x 2 cardinalities x 2 seeds x 2 structures + header
    assert_eq!(sequential.lines().count(), 3 * 2 * 2 * 2 + 1);
    let mut parallel_args = args.to_vec();
    parallel_args.push("--parallel");
    assert_eq!(stdout(&concise(&parallel_args)), sequential);
}

#[test]
fn bench_timing_rows_report_repetitions() {
    let text = stdout(&concise(&[
        "bench", "--cardinality", "200", "--density", "0.01", "--metric", "intersect,remove", "--reps", "3",
    ]));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1 + 2 * 4);
    assert!(rows[1..].iter().all(|r| r[8] == "3" && r[7].parse::<f64>().unwrap() >= 0.0));
}

#[test]
fn bench_error_codes() {
    assert_eq!(concise(&["bench", "--density", "0"]).status.code(), Some(1));
    assert_eq!(concise(&["bench", "--metric", "bogus"]).status.code(), Some(2));
    assert_eq!(concise(&["bench", "--reps", "0"]).status.code(), Some(2));
    assert_eq!(concise(&["bench", "--nope"]).status.code(), Some(2));
}
