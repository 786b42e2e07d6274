use revnet::es::{raes_config_graph, raes_to_sraes};
use revnet::fixtures;
use revnet::io::{
    graph_to_dot, load, morphism_to_canonical, net_to_dot, parse_model, parse_morphism, save, to_canonical, Model,
    ParseError,
};

fn scratch(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("revnet-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn save_then_load_is_identity() {
    for (name, _) in fixtures::FILES {
        if fixtures::MORPHISMS.contains(name) {
            continue;
        }
        let m = fixtures::model(name);
        let path = scratch(&format!("{name}.json"));
        save(&m, &path).unwrap();
        assert_eq!(load(&path).unwrap(), m, "{name}");
        // canonical text is a fixed point
        let text = to_canonical(&m);
        assert_eq!(to_canonical(&parse_model(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn merged_presentation_round_trips_through_text() {
    let m = Model::Sraes(raes_to_sraes(&fixtures::raes("h_intro")).unwrap());
    let text = to_canonical(&m);
    assert!(text.contains("{\"undo\": \"a\"}"));
    assert_eq!(parse_model(&text).unwrap(), m);
}

#[test]
fn morphism_files_round_trip() {
    for name in fixtures::MORPHISMS {
        let m = parse_morphism(fixtures::text(name)).unwrap();
        assert_eq!(parse_morphism(&morphism_to_canonical(&m)).unwrap(), m, "{name}");
    }
    let es = r#"{"events": {"a": "x"}, "undefined": ["b"]}"#;
    let m = parse_morphism(es).unwrap();
    assert_eq!(parse_morphism(&morphism_to_canonical(&m)).unwrap(), m);
}

#[test]
fn parse_errors() {
    let dangling = r#"{"kind": "ipt", "places": ["s"], "transitions": ["t"], "flow": [["s", "u"]], "inhibitor": [], "marking": []}"#;
    assert!(matches!(parse_model(dangling), Err(ParseError::Model(_))));

    let duplicate = r#"{"kind": "aes", "events": ["a", "a"], "causation": [], "weak_causality": []}"#;
    assert!(matches!(parse_model(duplicate), Err(ParseError::Duplicate { .. })));

    let unknown = r#"{"kind": "petri", "places": []}"#;
    assert!(matches!(parse_model(unknown), Err(ParseError::UnknownKind(k)) if k == "petri"));

    let extra = r#"{"kind": "aes", "events": [], "causation": [], "weak_causality": [], "colour": "red"}"#;
    assert!(matches!(parse_model(extra), Err(ParseError::UnexpectedField(f)) if f == "colour"));

    let missing = r#"{"kind": "aes", "events": [], "causation": []}"#;
    assert!(matches!(parse_model(missing), Err(ParseError::MissingField(f)) if f == "weak_causality"));

    assert!(matches!(parse_model("{\"kind\": "), Err(ParseError::Json { line: 1, .. })));

    let no_undefined = r#"{"events": {"a": "x"}}"#;
    assert!(matches!(parse_morphism(no_undefined), Err(ParseError::MissingField(f)) if f == "undefined"));

    let twice = r#"{"events": {"a": "x"}, "undefined": ["a"]}"#;
    assert!(matches!(parse_morphism(twice), Err(ParseError::Duplicate { .. })));

    assert!(matches!(load("/nonexistent/revnet.json"), Err(ParseError::Io { .. })));
}

#[test]
fn empty_net_dot() {
    assert_eq!(net_to_dot(&fixtures::net("empty_net")), "digraph net {\n  rankdir=LR;\n}\n");
}

#[test]
fn reversible_net_dot() {
    let want = r#"digraph net {
  rankdir=LR;
  "s1" [shape=circle, xlabel="s1", label="●"];
  "s2" [shape=circle, xlabel="s2", label="●"];
  "s3" [shape=circle, xlabel="s3", label="●"];
  "s4" [shape=circle, xlabel="s4", label=""];
  "s5" [shape=circle, xlabel="s5", label=""];
  "s6" [shape=circle, xlabel="s6", label=""];
  "a" [shape=box];
  "b" [shape=box];
  "c" [shape=box];
  "un_a" [shape=box, style=filled, fillcolor=grey];
  "un_b" [shape=box, style=filled, fillcolor=grey];
  "a" -> "s4";
  "b" -> "s5";
  "c" -> "s6";
  "s1" -> "a";
  "s2" -> "b";
  "s3" -> "c";
  "s4" -> "un_a";
  "s5" -> "un_b";
  "un_a" -> "s1";
  "un_b" -> "s2";
  "s1" -> "b" [arrowhead=odot];
  "s1" -> "un_a" [arrowhead=odot];
  "s2" -> "un_b" [arrowhead=odot];
  "s5" -> "c" [arrowhead=odot];
  "s6" -> "b" [arrowhead=odot];
  "s6" -> "un_a" [arrowhead=odot];
}
"#;
    assert_eq!(net_to_dot(&fixtures::net("n_r_rev")), want);
}

#[test]
fn configuration_graph_dot() {
    let g = raes_config_graph(&fixtures::raes("h_intro"), false, 100).unwrap();
    let dot = graph_to_dot(&g);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 8);
    assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), g.edges.len());
    assert!(dot.contains("n0 [label=\"{}\"];"));
    assert!(dot.contains("\"undo a\""));
}
