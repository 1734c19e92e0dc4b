use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn onerel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_onerel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn golden_corpus_matches() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/golden.corpus");
    let o = onerel(&["corpus", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn wrong_expectation_exits_one() {
    let f = corpus_file("a,b | ab = ba ;; solve aab aba ;; expect not_equal\n");
    let o = onerel(&["corpus", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mismatches on lines 1"));
}

#[test]
fn empty_corpus_exits_zero() {
    let f = corpus_file("# nothing here\n");
    let o = onerel(&["corpus", "--require-decision", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn corpus_parse_error_names_line() {
    let f = corpus_file("a,b | ab = ba ;; solve aab aba\na,b | ab = ba ;; solve aab\n");
    let o = onerel(&["corpus", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn undecided_corpus_with_require_decision_exits_three() {
    let f = corpus_file("a,b | baabbaa = a ;; divides bbaaa a\n");
    let path = f.path().to_str().unwrap();
    assert_eq!(onerel(&["corpus", path]).status.code(), Some(0));
    assert_eq!(onerel(&["corpus", "--strict", path]).status.code(), Some(0));
    assert_eq!(onerel(&["corpus", "--strict", "--require-decision", path]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(onerel(&["solve", "a,b | ab = ba", "ab"]).status.code(), Some(2));
    assert_eq!(onerel(&["solve", "a,b | ab =", "ab", "ba"]).status.code(), Some(2));
    assert_eq!(onerel(&["solve", "a,b | ab = ba", "abc", "ba"]).status.code(), Some(2));
    assert_eq!(onerel(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(onerel(&["corpus", "/nonexistent/corpus"]).status.code(), Some(2));
}

#[test]
fn solve_text_reports_route() {
    let o = onerel(&["solve", "a,b | ab = ba", "aab", "aba"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict: equal"), "{out}");
    assert!(out.contains("route: equal_length"), "{out}");
}

#[test]
fn solve_json_has_report_fields() {
    let o = onerel(&["--json", "solve", "a,b,c,d | abdadadacbaca = abdadabdaca", "abdadadacbaca", "abdadabdaca"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in ["presentation", "query", "verdict", "confidence", "route", "certificate", "steps", "pipeline"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["route"][0], "weak");
}

#[test]
fn json_report_round_trips() {
    let o = onerel(&["--json", "divides", "a,b | baababa = aba", "abbaaababab", "b"]);
    let report: onerel::SolveReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.verdict, onerel::Outcome::Equal);
    let again = serde_json::to_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<onerel::SolveReport>(&again).unwrap(), report);
}

#[test]
fn divides_prints_witness_and_trace() {
    let o = onerel(&["--trace", "divides", "a,b | baababa = aba", "abbaaababab", "b"]);
    let out = stdout(&o);
    assert!(out.contains("verdict: divisible"), "{out}");
    assert!(out.contains("witness: aabababaababababab"), "{out}");
    assert!(out.contains("= baabababaababababab"), "{out}");
}

#[test]
fn adian_trace_strict_demotes_loop() {
    let args = ["adian-trace", "a,b | baabbaa = a", "bbaaa", "a"];
    let lax = stdout(&onerel(&args));
    assert!(lax.contains("verdict: loop"), "{lax}");
    assert!(lax.lines().count() >= 3);
    let o = onerel(&[&["--strict", "--require-decision"][..], &args].concat());
    assert!(stdout(&o).contains("verdict: unknown"));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn adian_trace_rejects_presentations_with_left_cycles() {
    let o = onerel(&["adian-trace", "a,b | ab = a", "bb", "a"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn collatz_trace_text_and_json() {
    let out = stdout(&onerel(&["collatz-trace", "a,b | abaab = a", "aabaab", "a"]));
    assert!(out.contains("[num: (54, 1)]"), "{out}");
    assert!(out.contains("verdict: unsuccessful"), "{out}");
    let v = json(&onerel(&["--json", "collatz-trace", "a,b | aabbaab = a", "aaabb", "a"]));
    let firsts: Vec<&str> = v["states"].as_array().unwrap().iter().map(|s| s["numeric"][0].as_str().unwrap()).collect();
    assert_eq!(firsts, ["28", "14", "7", "3", "1", "412"]);
    assert_eq!(v["outcome"]["loop_kind"], "modular");
}

#[test]
fn classify_text_and_json() {
    let out = stdout(&onerel(&["classify", "b,c | bc = 1"]));
    assert!(out.contains("special: true"), "{out}");
    let v = json(&onerel(&["--json", "classify", "a,b | baaa = aaa"]));
    assert_eq!(v["left_cycle_free"], true);
}

#[test]
fn reduce_prints_pipeline() {
    let o = onerel(&["--trace", "reduce", "a,b,c,d | abdadadacbaca = abdadabdaca"]);
    let out = stdout(&o);
    let steps: Vec<&str> = out.lines().filter(|l| l.starts_with("  ") && !l.starts_with("   ")).collect();
    assert!(steps[0].trim_start().starts_with("weak"), "{out}");
    assert!(steps[1].trim_start().starts_with("strong"), "{out}");
    assert!(out.contains("alpha = a"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("result: ")), "{out}");
}

#[test]
fn budget_flags_are_honoured() {
    let o = onerel(&["--budget-steps", "1", "adian-trace", "a,b | baababa = aba", "abbaaababab", "b"]);
    assert!(stdout(&o).contains("verdict: unknown"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--json", "solve", "a,b | abaababb = abbaabb", "abaababbab", "abbaabbab"];
    let strip = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("elapsed_us");
        v
    };
    assert_eq!(strip(json(&onerel(&args))), strip(json(&onerel(&args))));
}
