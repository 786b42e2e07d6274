use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn revnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revnet")).args(args).output().unwrap()
}

fn revnet_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_revnet"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = revnet(&["validate", &fixture("h_intro")]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["verdict"], "pass");

    let bad = revnet(&["validate", &fixture("n_r"), "--as", "acn"]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json(&bad);
    assert_eq!(v["verdict"], "fail");
    let witnesses: Vec<&Value> = v["violations"].as_array().unwrap().iter().map(|x| &x["witness"]).collect();
    assert!(witnesses.contains(&&serde_json::json!(["a", "b"])), "{v}");

    assert_eq!(revnet(&["validate", &fixture("n_r"), "--as", "pacn"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    let missing = revnet(&["validate", "/nonexistent/model.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));
    assert_eq!(revnet(&["frobnicate"]).status.code(), Some(2));
    let garbage = revnet_stdin(&["validate", "-"], b"{not json");
    assert_eq!(garbage.status.code(), Some(2));
}

#[test]
fn translate_then_validate_through_a_pipe() {
    let enc = revnet(&["translate", &fixture("h_intro"), "--to", "racn"]);
    assert_eq!(enc.status.code(), Some(0), "{}", String::from_utf8_lossy(&enc.stderr));
    let back = revnet_stdin(&["validate", "-", "--as", "racn"], &enc.stdout);
    assert_eq!(back.status.code(), Some(0));
    assert_eq!(json(&back)["verdict"], "pass");
}

#[test]
fn configs_and_dot() {
    let g = revnet(&["configs", &fixture("h_intro"), "--json"]);
    assert_eq!(g.status.code(), Some(0));
    assert_eq!(json(&g)["nodes"].as_array().unwrap().len(), 8);

    let dot = revnet(&["dot", &fixture("n_r_rev")]);
    assert!(String::from_utf8(dot.stdout).unwrap().starts_with("digraph net {"));
}

#[test]
fn fire_sequence() {
    let ok = revnet(&["fire", &fixture("n_r_rev"), "--seq", "a,b,un_a"]);
    assert_eq!(ok.status.code(), Some(0));
    let blocked = revnet(&["fire", &fixture("n_r_rev"), "--seq", "un_a"]);
    assert_ne!(blocked.status.code(), Some(0));
}

#[test]
fn morphism_check() {
    let ok = revnet(&["check-morphism", &fixture("c0"), &fixture("c1"), &fixture("f_c")]);
    assert_eq!(ok.status.code(), Some(0));
    let wrong = revnet(&["check-morphism", &fixture("c1"), &fixture("c0"), &fixture("f_c")]);
    assert_ne!(wrong.status.code(), Some(0));
}

#[test]
fn output_is_byte_deterministic() {
    let runs: &[&[&str]] = &[
        &["relations", "N"],
        &["configs", "H", "--dot"],
        &["translate", "H", "--to", "racn"],
        &["coproduct", "H", "H"],
        &["reach", "N"],
    ];
    for args in runs {
        let args: Vec<String> = args
            .iter()
            .map(|a| match *a {
                "N" => fixture("n_r_rev"),
                "H" => fixture("h_intro"),
                x => x.to_string(),
            })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = revnet(&args);
        assert_eq!(first.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
        for _ in 0..3 {
            assert_eq!(revnet(&args).stdout, first.stdout, "{args:?}");
        }
    }
}
