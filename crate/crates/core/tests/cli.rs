mod common;

use std::path::Path;
use std::process::{Command, Output};

fn treo(dir: &Path, args: &[&str], treo_path: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_treo"));
    cmd.args(args).current_dir(dir).env_remove("TREO_PATH");
    if let Some(p) = treo_path {
        cmd.env("TREO_PATH", p);
    }
    cmd.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn workspace(files: &[(&str, &str)]) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in files {
        let path = dir.path().join(name);
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(path, text).unwrap();
    }
    dir
}

#[test]
fn exit_codes() {
    let dir = workspace(&[
        ("ok.treo", "import sync; f(a,b) { sync(a,b) }"),
        ("syntax.treo", "f(a,b) { sync(a b) }"),
        ("eval.treo", "f(a,b) { nowhere(a,b) }"),
        ("bad.script", "offers: b=1"),
    ]);
    let d = dir.path();
    assert_eq!(code(&treo(d, &["compile", "ok.treo"], None)), 0);
    let o = treo(d, &["compile", "syntax.treo"], None);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    let o = treo(d, &["check", "eval.treo"], None);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains('⚡'));
    assert_eq!(code(&treo(d, &["compile", "missing.treo"], None)), 3);
    assert_eq!(code(&treo(d, &["run", "ok.treo", "bad.script"], None)), 4);
    assert_eq!(code(&treo(d, &["run", "ok.treo", "none.script"], None)), 3);
}

#[test]
fn outputs_and_formats() {
    let corpus = common::corpus("");
    let out = tempfile::tempdir().unwrap();
    let json = out.path().join("alt.json");
    let o = treo(&corpus, &["compile", "alternator2.treo", "-o", json.to_str().unwrap()], None);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&json).unwrap()).unwrap();
    assert_eq!(v["main"], "alternator2");
    let o = treo(&corpus, &["compile", "alternator2.treo", "--format", "dot"], None);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("digraph \"alternator2\""));
    let o = treo(&corpus, &["run", "alternator2.treo", "alternator2.script", "--steps", "2"], None);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().next().unwrap().contains("\"kind\":\"header\""));
}

#[test]
fn check_reports_warnings_on_stderr() {
    let dir = workspace(&[("w.treo", "import sync; f(a,b) { { sync(a,b) | x > 0 } }")]);
    let o = treo(dir.path(), &["check", "w.treo"], None);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("warning: "));
}

#[test]
fn modules_are_found_on_search_paths() {
    let dir = workspace(&[
        ("lib/buf.treo", "import fifo1; buf(a,b) { fifo1(a,b) }"),
        ("app/main.treo", "import buf; m(x,y) { buf(x,y) }"),
    ]);
    let app = dir.path().join("app");
    let lib = dir.path().join("lib");
    assert_eq!(code(&treo(&app, &["compile", "main.treo"], None)), 2);
    assert_eq!(code(&treo(&app, &["compile", "main.treo", "-I", "../lib"], None)), 0);
    assert_eq!(code(&treo(&app, &["compile", "main.treo"], Some(&lib))), 0);
}

#[test]
fn strict_mode_and_depth_flags() {
    let corpus = common::corpus("");
    let args = ["check", "recursive_alternator.treo", "-m", "ralt4"];
    assert_eq!(code(&treo(&corpus, &args, None)), 0);
    let o = treo(&corpus, &[&args[..], &["--strict-no-recursion"]].concat(), None);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("recursion rejected (strict semantics)"));
    let o = treo(&corpus, &[&args[..], &["--recursion-depth", "2"]].concat(), None);
    assert_eq!(code(&o), 2);
}
