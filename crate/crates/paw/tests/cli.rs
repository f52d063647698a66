//! End-to-end tests of the `paw` binary: exit codes, output conventions,
//! and the pipelines the subcommands are meant to form together.

use std::fs;
use std::path::Path;
use std::process::Command;

fn paw(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_paw"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
    )
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path.display().to_string()
}

const SAFE_LOOP: &str = concat!(
    "pa v1\n",
    "alphabet a\n",
    "states q\n",
    "initial q 1/1\n",
    "accepting q\n",
    "condition safety\n",
    "trans a q q 1/1\n",
);

const MATCHING_PCP: &str = "pcp v1\nbase 2\nmap a 1 1\n";

#[test]
fn validate_separates_the_three_exit_classes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.pa", SAFE_LOOP);
    let (code, stdout, _) = paw(&["validate", &good]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.starts_with("ok"), "{stdout}");

    let bad = write(dir.path(), "bad.pa", &SAFE_LOOP.replace("q q 1/1", "q q 5/6"));
    let (code, stdout, _) = paw(&["validate", &bad]);
    assert_eq!(code, 1);
    assert!(stdout.contains('a') && stdout.contains('q'), "{stdout}");

    let junk = write(dir.path(), "junk.pa", "pa v1\nstates q\n");
    let (code, _, stderr) = paw(&["validate", &junk]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2"), "{stderr}");

    let (code, _, _) = paw(&["validate", "--definitely-not-a-flag"]);
    assert_eq!(code, 2);
}

#[test]
fn gadget_pipeline_builds_validates_and_evaluates() {
    let dir = tempfile::tempdir().unwrap();
    let pcp = write(dir.path(), "match.pcp", MATCHING_PCP);
    let out = dir.path().join("gadget").display().to_string();

    let (code, stdout, _) = paw(&["build-gadget", "equality", &pcp, "-o", &out]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("threshold 1/3"), "{stdout}");

    let gadget = format!("{out}/gadget.pa");
    let (code, stdout, _) = paw(&["validate", &gadget]);
    assert_eq!(code, 0, "{stdout}");

    let (code, stdout, _) = paw(&["eval", &gadget, "--word", "a $ ; $"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().next(), Some("1/3"), "{stdout}");

    // Components validate too, and the metadata names each one.
    let meta = fs::read_to_string(format!("{out}/meta.txt")).unwrap();
    for line in meta.lines().filter(|l| l.starts_with("component ")) {
        let file = line.split_whitespace().nth(2).unwrap();
        let (code, _, stderr) = paw(&["validate", &format!("{out}/{file}")]);
        assert_eq!(code, 0, "{stderr}");
    }
}

#[test]
fn serialization_reaches_a_fixed_point_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let pcp = write(dir.path(), "match.pcp", MATCHING_PCP);
    let out = dir.path().join("g").display().to_string();
    paw(&["build-gadget", "value", &pcp, "-o", &out]);

    // rescale with identical endpoints rewrites the file through a full
    // parse-serialize cycle; the bytes must not change.
    let gadget = format!("{out}/gadget.pa");
    let copy = format!("{out}/copy.pa");
    let (code, _, stderr) = paw(&["rescale", &gadget, "--from", "1/8", "--to", "1/8", "-o", &copy]);
    assert_eq!(code, 0, "{stderr}");
    assert_eq!(
        fs::read_to_string(&gadget).unwrap(),
        fs::read_to_string(&copy).unwrap()
    );
}

#[test]
fn decide_answers_are_backed_by_their_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "safe.pa", SAFE_LOOP);
    let (code, stdout, _) = paw(&["decide", "almost-safety", &file]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("YES"));
    let witness = lines
        .next()
        .and_then(|l| l.strip_prefix("witness "))
        .expect("witness line");

    let (code, stdout, _) = paw(&["eval", &file, "--word", witness]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().next(), Some("1/1"), "{stdout}");
}

#[test]
fn decide_uses_exit_three_for_condition_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "buchi.pa",
        &SAFE_LOOP.replace("condition safety", "condition buchi"),
    );
    let (code, _, stderr) = paw(&["decide", "almost-safety", &file]);
    assert_eq!(code, 3, "{stderr}");
    assert!(stderr.contains("buchi"), "{stderr}");

    let (code, _, _) = paw(&["decide", "positive-reach", &file]);
    assert_eq!(code, 3);
}

#[test]
fn witness_limit_word_beats_the_bound_on_the_built_gadget() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("limit").display().to_string();
    let (code, _, _) = paw(&["build-gadget", "limit", "--x", "3/4", "-o", &out]);
    assert_eq!(code, 0);

    let (code, stdout, _) = paw(&["witness-limit", "--x", "3/4", "--eps", "1/8"]);
    assert_eq!(code, 0, "{stdout}");
    let word = stdout
        .lines()
        .find_map(|l| l.strip_prefix("word "))
        .expect("word line");

    let (code, stdout, _) = paw(&["eval", &format!("{out}/gadget.pa"), "--word", word]);
    assert_eq!(code, 0);
    let exact = stdout.lines().next().unwrap();
    let (p, q) = exact.split_once('/').unwrap();
    let (p, q): (f64, f64) = (p.parse().unwrap(), q.parse().unwrap());
    assert!(p / q > 0.75, "value {exact} should beat 3/4");
}

#[test]
fn rescale_moves_the_solution_value_onto_the_new_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let pcp = write(dir.path(), "match.pcp", MATCHING_PCP);
    let out = dir.path().join("g").display().to_string();
    paw(&["build-gadget", "equality", &pcp, "-o", &out]);

    let rescaled = format!("{out}/half.pa");
    let (code, stdout, _) = paw(&[
        "rescale",
        &format!("{out}/gadget.pa"),
        "--from",
        "1/3",
        "--to",
        "1/2",
        "-o",
        &rescaled,
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("threshold 1/2"), "{stdout}");

    let (_, stdout, _) = paw(&["eval", &rescaled, "--word", "a $ ; $"]);
    assert_eq!(stdout.lines().next(), Some("1/2"), "{stdout}");
}

#[test]
fn simulate_is_deterministic_and_plausible() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "safe.pa", SAFE_LOOP);
    let args = [
        "simulate", &file, "--word", "; a", "--trials", "200", "--horizon", "16", "--seed", "9",
    ];
    let (code, first, _) = paw(&args);
    assert_eq!(code, 0);
    assert!(first.contains("mean 1"), "{first}");
    let (_, second, _) = paw(&args);
    assert_eq!(first, second);

    let (code, _, stderr) = paw(&["simulate", &file, "--word", "; a", "--horizon", "0"]);
    assert_eq!(code, 1, "{stderr}");
}

#[test]
fn solve_pcp_finds_words_or_says_none() {
    let dir = tempfile::tempdir().unwrap();
    let solvable = write(dir.path(), "s.pcp", MATCHING_PCP);
    let (code, stdout, _) = paw(&["solve-pcp", &solvable, "--maxlen", "3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "a");

    let hopeless = write(dir.path(), "h.pcp", "pcp v1\nbase 2\nmap a 1 11\n");
    let (code, stdout, _) = paw(&["solve-pcp", &hopeless, "--maxlen", "6"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "NONE");
}

#[test]
fn json_mode_emits_one_well_formed_object() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "safe.pa", SAFE_LOOP);
    let (code, stdout, _) = paw(&["eval", &file, "--word", "; a", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).expect("valid json");
    assert_eq!(v["command"], "eval");
    assert_eq!(v["exact"], "1/1");
    assert_eq!(v["decimal"], 1.0);
    assert_eq!(v["inputs"]["word"], "; a");

    let (code, stdout, _) = paw(&["decide", "almost-safety", &file, "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(stdout.trim()).expect("valid json");
    assert_eq!(v["result"], "YES");
    assert_eq!(v["witness"], "; a");
}
