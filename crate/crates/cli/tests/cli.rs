use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locale-forge")).args(args).env_remove("LOCALE_FORGE_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn circle_open_text_matches_golden() {
    let o = run(&["example", "circle-open", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("circle_open.txt"));
}

#[test]
fn circle_outputs_match_golden_json() {
    assert_eq!(stdout(&run(&["example", "circle-open"])), golden("circle_open.json"));
    assert_eq!(stdout(&run(&["example", "circle-proper"])), golden("circle_proper_raw.json"));
    assert_eq!(stdout(&run(&["example", "circle-proper", "--simplify"])), golden("circle_proper_simplified.json"));
}

#[test]
fn transform_from_files_reproduces_the_circle() {
    let o = run(&["transform", &path("reals.pres"), &path("circle_open.quot")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("circle_open.json"));
}

#[test]
fn ascii_output_parses_back() {
    let o = run(&["example", "circle-proper", "--simplify", "-f", "ascii"]);
    let text = stdout(&o);
    assert!(text.is_ascii());
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("circle.pres");
    std::fs::write(&file, &text).unwrap();
    let o = run(&["check", file.to_str().unwrap(), "--grid", "0,1/2,1"]);
    assert!(matches!(o.status.code(), Some(0 | 1)), "{}", stdout(&o));
    assert!(json(&o)["relations"].is_array());
}

#[test]
fn oracle_verify_passes_and_is_deterministic() {
    let args = ["verify", "--oracle", "--mode", "open", "--seed", "7", "--count", "100"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let doc = json(&a);
    assert_eq!(doc["checked"], 100);
    assert_eq!(doc["failures"].as_array().unwrap().len(), 0);
    assert_eq!(stdout(&a), stdout(&run(&args)));
}

#[test]
fn seed_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_locale-forge"))
        .args(["verify", "--kleene", "--count", "10"])
        .env("LOCALE_FORGE_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(json(&o)["seed"], 99);
}

#[test]
fn coverage_suite_and_single_file() {
    let o = run(&["verify", "--coverage", "--kind", "preframe", "--count", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--coverage", &path("two_points.pres")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "pass");
}

#[test]
fn eval_two_points() {
    let doc = json(&run(&["eval", &path("two_points.pres")]));
    assert_eq!(doc["size"], 4);
    assert_eq!(doc["kind"], "frame");
}

#[test]
fn eval_on_a_grid() {
    let circle = stdout(&run(&["example", "circle-open", "-f", "ascii"]));
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("circle-open.pres");
    std::fs::write(&file, circle).unwrap();
    let o = run(&["eval", "--grid", "0,1/2,1", "--bounded", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["size"].as_u64().unwrap() > 2);
}

#[test]
fn check_reports_unstable_relation() {
    let o = run(&["check", &path("unstable.pres")]);
    assert_eq!(o.status.code(), Some(1));
    let doc = json(&o);
    assert_eq!(doc["verdict"], "fail");
    assert!(doc["relations"][0]["witness"].is_object());
    assert_eq!(run(&["check", &path("two_points.pres")]).status.code(), Some(0));
}

#[test]
fn derive_swap_and_failing_operator() {
    let o = run(&["derive", &path("two_points.pres"), &path("swap.json"), "--mode", "open", "--colimit", "coequaliser"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_eq!(doc["spec"]["mode"], "open");
    let o = run(&["derive", &path("two_points.pres"), &path("collapse.json"), "--mode", "open"]);
    assert_eq!(o.status.code(), Some(1));
    let doc = json(&o);
    assert!(doc["spec"].is_null());
    assert_eq!(doc["report"]["witnesses"][0]["law"], "openLaw");
}

#[test]
fn z2_swap_presents_a_point() {
    for mode in ["open", "triquotient"] {
        let doc = json(&run(&["example", "z2-swap", "--mode", mode]));
        assert_eq!(doc["frame"]["size"], 2);
    }
}

#[test]
fn nat_reverse_reports_scott_continuity() {
    let doc = json(&run(&["example", "nat-reverse"]));
    assert_eq!(doc["carrier"].as_array().unwrap().len(), 2);
    assert_eq!(doc["report"]["witnesses"][0]["law"], "scottContinuity");
}

#[test]
fn parse_errors_are_structured() {
    let o = run(&["check", &path("malformed.pres")]);
    assert_eq!(o.status.code(), Some(2));
    let e = &json(&o)["error"];
    assert_eq!(e["kind"], "parse");
    assert_eq!((e["line"].as_u64(), e["col"].as_u64()), (Some(3), Some(11)));
}

#[test]
fn usage_errors_exit_2() {
    for args in [vec!["verify"], vec!["bogus"], vec!["verify", "--oracle", "--mode", "sideways"], vec!["eval", "missing.pres"]] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(json(&o)["error"]["kind"], "usage");
    }
    let o = run(&["eval", &path("reals.pres")]);
    assert_eq!(o.status.code(), Some(2));
}
