//! JSON model files, canonical printing and DOT export.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::es::{EsSpec, Sraes, Target};
use crate::graph::{Config, ConfigGraph};
use crate::morphism::{EsMorphism, NetMorphism};
use crate::net::NetSpec;
use crate::racn::Racn;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed JSON at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("missing field `{0}`")]
    MissingField(String),
    #[error("unexpected field `{0}`")]
    UnexpectedField(String),
    #[error("field `{field}`: expected {expected}")]
    WrongType { field: String, expected: &'static str },
    #[error("field `{field}`: duplicate entry {entry}")]
    Duplicate { field: String, entry: String },
    #[error("unknown kind `{0}`")]
    UnknownKind(String),
    #[error("{0}")]
    Model(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Ipt,
    Cn,
    Acn,
    Racn,
    Aes,
    Raes,
    Sraes,
}

impl Kind {
    pub fn parse(s: &str) -> Option<Kind> {
        Some(match s {
            "ipt" => Kind::Ipt,
            "cn" => Kind::Cn,
            "acn" => Kind::Acn,
            "racn" => Kind::Racn,
            "aes" => Kind::Aes,
            "raes" => Kind::Raes,
            "sraes" => Kind::Sraes,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Ipt => "ipt",
            Kind::Cn => "cn",
            Kind::Acn => "acn",
            Kind::Racn => "racn",
            Kind::Aes => "aes",
            Kind::Raes => "raes",
            Kind::Sraes => "sraes",
        }
    }

    pub fn is_net(self) -> bool {
        matches!(self, Kind::Ipt | Kind::Cn | Kind::Acn | Kind::Racn)
    }
}

/// A loaded model file. Nets of every kind are held as an rACN whose backward
/// map is empty unless the kind is `racn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Net { kind: Kind, net: Racn },
    Es { kind: Kind, spec: EsSpec },
    Sraes(Sraes),
}

impl Model {
    pub fn kind(&self) -> Kind {
        match self {
            Model::Net { kind, .. } | Model::Es { kind, .. } => *kind,
            Model::Sraes(_) => Kind::Sraes,
        }
    }
}

struct Obj<'a> {
    map: &'a Map<String, Value>,
    used: BTreeSet<&'a str>,
}

impl<'a> Obj<'a> {
    fn new(v: &'a Value, what: &str) -> ParseResult<Self> {
        let map = v.as_object().ok_or_else(|| ParseError::WrongType {
            field: what.to_string(),
            expected: "an object",
        })?;
        Ok(Obj { map, used: BTreeSet::new() })
    }

    fn get(&mut self, key: &'a str) -> ParseResult<&'a Value> {
        self.used.insert(key);
        self.map.get(key).ok_or_else(|| ParseError::MissingField(key.to_string()))
    }

    fn names(&mut self, key: &'a str) -> ParseResult<BTreeSet<String>> {
        let v = self.get(key)?;
        names(v, key)
    }

    fn pairs(&mut self, key: &'a str) -> ParseResult<BTreeSet<(String, String)>> {
        let v = self.get(key)?;
        let arr = v.as_array().ok_or_else(|| wrong(key, "an array of pairs"))?;
        let mut out = BTreeSet::new();
        for p in arr {
            let pair = p
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| Some((a[0].as_str()?.to_string(), a[1].as_str()?.to_string())))
                .ok_or_else(|| wrong(key, "an array of two-string arrays"))?;
            if !out.insert(pair.clone()) {
                return Err(dup(key, format!("[{:?}, {:?}]", pair.0, pair.1)));
            }
        }
        Ok(out)
    }

    fn finish(self) -> ParseResult<()> {
        match self.map.keys().find(|k| !self.used.contains(k.as_str())) {
            Some(k) => Err(ParseError::UnexpectedField(k.clone())),
            None => Ok(()),
        }
    }
}

fn wrong(field: &str, expected: &'static str) -> ParseError {
    ParseError::WrongType { field: field.to_string(), expected }
}

fn dup(field: &str, entry: String) -> ParseError {
    ParseError::Duplicate { field: field.to_string(), entry }
}

fn names(v: &Value, key: &str) -> ParseResult<BTreeSet<String>> {
    let arr = v.as_array().ok_or_else(|| wrong(key, "an array of strings"))?;
    let mut out = BTreeSet::new();
    for x in arr {
        let s = x.as_str().ok_or_else(|| wrong(key, "an array of strings"))?;
        if !out.insert(s.to_string()) {
            return Err(dup(key, format!("{s:?}")));
        }
    }
    Ok(out)
}

fn string_map(v: &Value, key: &str) -> ParseResult<BTreeMap<String, String>> {
    let obj = v.as_object().ok_or_else(|| wrong(key, "an object of strings"))?;
    obj.iter()
        .map(|(k, x)| Ok((k.clone(), x.as_str().ok_or_else(|| wrong(key, "an object of strings"))?.to_string())))
        .collect()
}

pub fn parse_json(text: &str) -> ParseResult<Value> {
    serde_json::from_str(text).map_err(|e| ParseError::Json {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

pub fn parse_model(text: &str) -> ParseResult<Model> {
    let v = parse_json(text)?;
    let mut o = Obj::new(&v, "model")?;
    let kind_s = o.get("kind")?.as_str().ok_or_else(|| wrong("kind", "a string"))?;
    let kind = Kind::parse(kind_s).ok_or_else(|| ParseError::UnknownKind(kind_s.to_string()))?;
    let model = match kind {
        k if k.is_net() => {
            let spec = NetSpec {
                places: o.names("places")?,
                transitions: o.names("transitions")?,
                flow: o.pairs("flow")?,
                inhibitor: o.pairs("inhibitor")?,
                marking: o.names("marking")?,
            };
            let backward = if k == Kind::Racn {
                string_map(o.get("backward")?, "backward")?
            } else {
                BTreeMap::new()
            };
            Model::Net {
                kind: k,
                net: Racn::from_spec(&spec, &backward)?,
            }
        }
        Kind::Sraes => {
            let events = o.names("events")?;
            let reversible = o.names("reversible")?;
            let mut causation = BTreeSet::new();
            for (e, t) in target_pairs(o.get("causation")?, "causation")? {
                let Value::String(e) = e else {
                    return Err(wrong("causation", "pairs [event, event-or-undo]"));
                };
                if !causation.insert((e.clone(), target(&t, "causation")?)) {
                    return Err(dup("causation", format!("[{e:?}, {t}]")));
                }
            }
            let mut precedence = BTreeSet::new();
            for (t, e) in target_pairs(o.get("precedence")?, "precedence")? {
                let Value::String(e) = e else {
                    return Err(wrong("precedence", "pairs [event-or-undo, event]"));
                };
                if !precedence.insert((target(&t, "precedence")?, e.clone())) {
                    return Err(dup("precedence", format!("[{t}, {e:?}]")));
                }
            }
            let s = Sraes { events, reversible, causation, precedence };
            crate::es::validate_sraes_names(&s)?;
            Model::Sraes(s)
        }
        k => {
            let reversible_fields = k == Kind::Raes;
            let mut spec = EsSpec {
                events: o.names("events")?,
                causation: o.pairs("causation")?,
                weak_causality: o.pairs("weak_causality")?,
                ..EsSpec::default()
            };
            if reversible_fields {
                spec.reversible = o.names("reversible")?;
                spec.rev_causation = o.pairs("rev_causation")?;
                spec.prevention = o.pairs("prevention")?;
            }
            crate::es::Raes::from_spec(&spec)?;
            Model::Es { kind: k, spec }
        }
    };
    o.finish()?;
    Ok(model)
}

fn target_pairs(v: &Value, key: &str) -> ParseResult<Vec<(Value, Value)>> {
    let arr = v.as_array().ok_or_else(|| wrong(key, "an array of pairs"))?;
    arr.iter()
        .map(|p| match p.as_array() {
            Some(a) if a.len() == 2 => Ok((a[0].clone(), a[1].clone())),
            _ => Err(wrong(key, "an array of pairs")),
        })
        .collect()
}

fn target(v: &Value, key: &str) -> ParseResult<Target> {
    match v {
        Value::String(e) => Ok(Target::Event(e.clone())),
        Value::Object(m) if m.len() == 1 => match m.get("undo") {
            Some(Value::String(u)) => Ok(Target::Undo(u.clone())),
            _ => Err(wrong(key, "an event name or {\"undo\": event}")),
        },
        _ => Err(wrong(key, "an event name or {\"undo\": event}")),
    }
}

pub fn load(path: &str) -> ParseResult<Model> {
    parse_model(&read(path)?)
}

/// Reads a file, or standard input for `-`.
pub fn read(path: &str) -> ParseResult<String> {
    use std::io::Read;
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|source| ParseError::Io { path: path.to_string(), source })?;
    Ok(text)
}

pub fn save(model: &Model, path: &str) -> ParseResult<()> {
    std::fs::write(path, to_canonical(model)).map_err(|source| ParseError::Io { path: path.to_string(), source })
}

fn q(s: &str) -> String {
    Value::String(s.to_string()).to_string()
}

fn list<'a>(xs: impl IntoIterator<Item = &'a String>) -> String {
    format!("[{}]", xs.into_iter().map(|x| q(x)).collect::<Vec<_>>().join(", "))
}

fn pair_list<'a>(xs: impl IntoIterator<Item = &'a (String, String)>) -> String {
    format!(
        "[{}]",
        xs.into_iter().map(|(a, b)| format!("[{}, {}]", q(a), q(b))).collect::<Vec<_>>().join(", ")
    )
}

fn target_json(t: &Target) -> String {
    match t {
        Target::Event(e) => q(e),
        Target::Undo(u) => format!("{{\"undo\": {}}}", q(u)),
    }
}

fn object(fields: &[(&str, String)]) -> String {
    let body: Vec<String> = fields.iter().map(|(k, v)| format!("  {}: {}", q(k), v)).collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

/// Canonical text: fixed field order, sorted arrays, one field per line.
pub fn to_canonical(model: &Model) -> String {
    match model {
        Model::Net { kind, net } => {
            let s = net.net().to_spec();
            let mut fields = vec![
                ("kind", q(kind.as_str())),
                ("places", list(&s.places)),
                ("transitions", list(&s.transitions)),
                ("flow", pair_list(&s.flow)),
                ("inhibitor", pair_list(&s.inhibitor)),
                ("marking", list(&s.marking)),
            ];
            if *kind == Kind::Racn {
                let b = net.backward_map();
                let body: Vec<String> = b.iter().map(|(k, v)| format!("{}: {}", q(k), q(v))).collect();
                fields.push(("backward", format!("{{{}}}", body.join(", "))));
            }
            object(&fields)
        }
        Model::Es { kind, spec } => {
            let mut fields = vec![
                ("kind", q(kind.as_str())),
                ("events", list(&spec.events)),
            ];
            if *kind == Kind::Raes {
                fields.push(("reversible", list(&spec.reversible)));
            }
            fields.push(("causation", pair_list(&spec.causation)));
            fields.push(("weak_causality", pair_list(&spec.weak_causality)));
            if *kind == Kind::Raes {
                fields.push(("rev_causation", pair_list(&spec.rev_causation)));
                fields.push(("prevention", pair_list(&spec.prevention)));
            }
            object(&fields)
        }
        Model::Sraes(k) => {
            let causation: Vec<String> =
                k.causation.iter().map(|(e, t)| format!("[{}, {}]", q(e), target_json(t))).collect();
            let precedence: Vec<String> =
                k.precedence.iter().map(|(t, e)| format!("[{}, {}]", target_json(t), q(e))).collect();
            object(&[
                ("kind", q("sraes")),
                ("events", list(&k.events)),
                ("reversible", list(&k.reversible)),
                ("causation", format!("[{}]", causation.join(", "))),
                ("precedence", format!("[{}]", precedence.join(", "))),
            ])
        }
    }
}

/// Either kind of morphism file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismFile {
    Es(EsMorphism),
    Net(NetMorphism),
}

fn partial_map(o: &mut Obj, key: &'static str) -> ParseResult<BTreeMap<String, Option<String>>> {
    let defined = string_map(o.get(key)?, key)?;
    let undefined = names(o.get("undefined")?, "undefined")?;
    let mut out: BTreeMap<String, Option<String>> = defined.into_iter().map(|(k, v)| (k, Some(v))).collect();
    for u in undefined {
        if out.insert(u.clone(), None).is_some() {
            return Err(dup("undefined", format!("{u:?} is also mapped")));
        }
    }
    Ok(out)
}

pub fn parse_morphism(text: &str) -> ParseResult<MorphismFile> {
    let v = parse_json(text)?;
    let mut o = Obj::new(&v, "morphism")?;
    let m = if o.map.contains_key("events") {
        MorphismFile::Es(EsMorphism { map: partial_map(&mut o, "events")? })
    } else {
        let places = o.pairs("places")?;
        MorphismFile::Net(NetMorphism {
            places,
            transitions: partial_map(&mut o, "transitions")?,
        })
    };
    o.finish()?;
    Ok(m)
}

pub fn morphism_to_canonical(m: &MorphismFile) -> String {
    let split = |map: &BTreeMap<String, Option<String>>| {
        let defined: Vec<String> = map
            .iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| format!("{}: {}", q(k), q(v))))
            .collect();
        let undefined: Vec<&String> = map.iter().filter(|(_, v)| v.is_none()).map(|(k, _)| k).collect();
        (format!("{{{}}}", defined.join(", ")), list(undefined))
    };
    match m {
        MorphismFile::Es(f) => {
            let (d, u) = split(&f.map);
            object(&[("events", d), ("undefined", u)])
        }
        MorphismFile::Net(f) => {
            let (d, u) = split(&f.transitions);
            object(&[("places", pair_list(&f.places)), ("transitions", d), ("undefined", u)])
        }
    }
}

fn dot_id(s: &str) -> String {
    q(s)
}

/// DOT rendering of a net: places as circles (a dot when marked), transitions
/// as boxes (backward ones grey), inhibitor arcs with a circle tip.
pub fn net_to_dot(v: &Racn) -> String {
    let net = v.net();
    let mut out = String::from("digraph net {\n  rankdir=LR;\n");
    for (s, name) in net.places().iter().enumerate() {
        let marked = net.initial_marking().contains(s);
        let _ = writeln!(
            out,
            "  {} [shape=circle, xlabel={}, label=\"{}\"];",
            dot_id(name),
            q(name),
            if marked { "●" } else { "" }
        );
    }
    for (t, name) in net.transitions().iter().enumerate() {
        let style = if v.is_forward(t) { "" } else { ", style=filled, fillcolor=grey" };
        let _ = writeln!(out, "  {} [shape=box{}];", dot_id(name), style);
    }
    let spec = net.to_spec();
    for (a, b) in &spec.flow {
        let _ = writeln!(out, "  {} -> {};", dot_id(a), dot_id(b));
    }
    for (s, t) in &spec.inhibitor {
        let _ = writeln!(out, "  {} -> {} [arrowhead=odot];", dot_id(s), dot_id(t));
    }
    out.push_str("}\n");
    out
}

fn config_label(c: &Config) -> String {
    format!("{{{}}}", c.iter().cloned().collect::<Vec<_>>().join(", "))
}

/// DOT rendering of a configuration graph; nodes are numbered in sorted order.
pub fn graph_to_dot(g: &ConfigGraph) -> String {
    let ids: BTreeMap<&Config, usize> = g.nodes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut out = String::from("digraph configurations {\n");
    for (c, i) in &ids {
        let _ = writeln!(out, "  n{} [label={}];", i, q(&config_label(c)));
    }
    for (s, l, t) in &g.edges {
        let label = l.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "  n{} -> n{} [label={}];", ids[s], ids[t], q(&label));
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of an event structure: `<` solid, `↗` dashed, undo nodes grey
/// with `≺` edges into them and `◁` edges (dotted) out of them.
pub fn es_to_dot(spec: &EsSpec) -> String {
    let mut out = String::from("digraph es {\n");
    for e in &spec.events {
        let _ = writeln!(out, "  {} [shape=ellipse];", dot_id(e));
    }
    for u in &spec.reversible {
        let _ = writeln!(out, "  {} [shape=ellipse, style=filled, fillcolor=grey, label={}];", dot_id(&format!("undo {u}")), q(&format!("undo {u}")));
    }
    for (a, b) in &spec.causation {
        let _ = writeln!(out, "  {} -> {};", dot_id(a), dot_id(b));
    }
    for (a, b) in &spec.weak_causality {
        let _ = writeln!(out, "  {} -> {} [style=dashed];", dot_id(a), dot_id(b));
    }
    for (e, u) in &spec.rev_causation {
        let _ = writeln!(out, "  {} -> {};", dot_id(e), dot_id(&format!("undo {u}")));
    }
    for (u, e) in &spec.prevention {
        let _ = writeln!(out, "  {} -> {} [style=dotted];", dot_id(&format!("undo {u}")), dot_id(e));
    }
    out.push_str("}\n");
    out
}

/// `{"nodes": [...], "edges": [{"from", "label", "to"}]}` in sorted order.
pub fn graph_to_json(g: &ConfigGraph) -> Value {
    serde_json::json!({
        "nodes": g.nodes.iter().map(|c| c.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|(s, l, t)| serde_json::json!({
            "from": s,
            "label": l.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "to": t,
        })).collect::<Vec<_>>(),
    })
}
