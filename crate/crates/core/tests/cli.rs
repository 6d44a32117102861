use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use asymstream::harness::{Answer, RunReport};
use proptest::prelude::*;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_asymstream"));
    c.env_remove("ASYMSTREAM_SEED");
    c
}

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or_default()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn report(o: &Output) -> RunReport {
    RunReport::from_json(String::from_utf8_lossy(&o.stdout).trim()).unwrap()
}

fn write(dir: &Path, name: &str, body: &[u8]) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn match_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t", b"abcabd");
    let o = run(&["match", &t, "-"], Some(b"abd"));
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!((r.answer.position, r.passes), (Some(4), 1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("found at 4"));

    let o = run(&["--deterministic", "match", &t], Some(b"abd"));
    assert_eq!(report(&o).answer.position, Some(4));

    let o = run(&["match", &t, "-"], Some(b"abcabdabd"));
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["match", "/nonexistent/file", "-"], Some(b"a"));
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--modulus-bits", "99", "match", &t], Some(b"a"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lcs_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a", b"banana");
    let b = write(dir.path(), "b", b"antenna");
    let z = write(dir.path(), "z", b"xyz");
    let o = run(&["lcs", &a, &b], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o).answer.length, Some(2));
    let o = run(&["lcs", &a, &z, "--mode", "logrounds"], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(&o).answer.length, Some(0));
    let o = run(&["lcs", &a, "-", "--mode", "approx"], Some(b"antenna"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("replayable source required"));
    let o = run(&["lcs", &a, &b, "--mode", "approx", "--epsilon", "1.5"], None);
    assert_eq!(o.status.code(), Some(2));

    let body: Vec<u8> = (0..64u32).map(|i| b'a' + (i * 37 % 11) as u8).collect();
    let s = write(dir.path(), "s", &body);
    let s2 = write(dir.path(), "s2", &body);
    let o = run(&["lcs", &s, &s2, "--mode", "logrounds", "--epsilon", "0.5"], None);
    assert_eq!((report(&o).answer.length, report(&o).passes), (Some(32), 1));
    let o = run(&["lcs", &s, &s2, "--mode", "approx", "--kappa", "0.25"], None);
    assert!(report(&o).passes <= 5);
}

#[test]
fn wildcard_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g").to_str().unwrap().to_string();
    let o = run(&["gen", "thm2-adversarial", "--kk", "4", "--i", "2", "--wild", "2", "--out", &out], None);
    assert_eq!(o.status.code(), Some(0));
    let (t, p) = (format!("{out}/text.txt"), format!("{out}/pattern.txt"));
    let o = run(&["wildcard", &t, &p, "--space-budget", "3"], None);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&["gen", "thm2-adversarial", "--kk", "4", "--i", "2", "--out", &out], None);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["wildcard", &t, &p, "--oracle", "naive"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["wildcard", &t, &p, "--space-budget", "0"], None);
    assert_eq!(o.status.code(), Some(2));

    let t = write(dir.path(), "t", b"ab?ab*");
    let p = write(dir.path(), "p", b"b?*");
    let o = run(&["wildcard", &t, &p, "--wildcard-byte", "*", "--space-budget", "6"], None);
    assert_eq!(report(&o).answer.position, Some(2));
}

#[test]
fn gen_and_bench() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r").to_str().unwrap().to_string();
    let a = run(&["--seed", "5", "gen", "random", "--n", "100", "--m", "5", "--out", &out], None);
    assert_eq!(a.status.code(), Some(0));
    let first = std::fs::read(format!("{out}/text.txt")).unwrap();
    let b = run(&["--seed", "5", "gen", "random", "--n", "100", "--m", "5", "--out", &out], None);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(first, std::fs::read(format!("{out}/text.txt")).unwrap());
    let o = run(&["gen", "planted-lcs", "--n", "512", "--m", "512", "--length", "64", "--sigma", "26", "--out", &out], None);
    let side: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(side["lcs"].as_u64().unwrap() >= 64);
    let o = run(&["gen", "random", "--n", "10", "--m", "20", "--out", &out], None);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["bench", "match", "--sizes", "1000,2000", "--repetitions", "1"], None);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(o.stdout.as_slice());
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        ["algorithm", "n", "m", "param", "time_ms", "peak_words", "passes"]
    );
    assert_eq!(r.records().count(), 2);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a", b"the quick brown fox jumps over the lazy dog");
    let b = write(dir.path(), "b", b"a lazy brown dog jumps");
    for args in [
        vec!["--no-timing", "match", &a, &b],
        vec!["--no-timing", "lcs", &a, &b],
        vec!["--no-timing", "lcs", &a, &b, "--mode", "approx"],
        vec!["--no-timing", "wildcard", &a, &b, "--space-budget", "4"],
    ] {
        let x = run(&args, None);
        let y = run(&args, None);
        assert_eq!(x.stdout, y.stdout, "{args:?}");
        assert!(!x.stdout.is_empty());
    }
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t", b"abcabd");
    let o = bin().args(["match", &t, &t]).env("ASYMSTREAM_SEED", "77").output().unwrap();
    assert_eq!(report(&o).seed, 77);
}

fn answer() -> impl Strategy<Value = Answer> {
    (any::<bool>(), any::<Option<usize>>(), any::<Option<usize>>(), any::<Option<usize>>())
        .prop_map(|(found, position, end, length)| Answer { found, position, end, length })
}

proptest! {
    #[test]
    fn report_json_round_trip(
        command in "[a-z]{1,8}",
        answer in answer(),
        passes in any::<u32>(),
        peak in any::<usize>(),
        reads in any::<u64>(),
        ms in 0.0f64..1e9,
        seed in any::<u64>(),
        params in proptest::collection::btree_map("[a-z_]{1,6}", ".{0,12}", 0..5),
    ) {
        let r = RunReport {
            command,
            answer,
            passes,
            peak_state_words: peak,
            text_reads: reads,
            wall_time_ms: ms,
            seed,
            params,
        };
        prop_assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
    }
}
