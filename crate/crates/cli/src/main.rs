use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use revnet::acn::{cn_to_acn, derived_relations, validate_acn, validate_cn, validate_pacn};
use revnet::bridge::{racn_to_raes, raes_to_racn, NamingScheme};
use revnet::es::{
    raes_config_graph, raes_coproduct, raes_to_sraes, saturate, sraes_to_raes, sustained_causation, validate_aes,
    validate_raes, validate_sraes, Aes, Raes,
};
use revnet::io::{self, Kind, Model, MorphismFile, ParseError};
use revnet::morphism::{check_acn_morphism, check_aes_morphism, check_raes_morphism, check_racn_morphism};
use revnet::net::{Ipt, DEFAULT_BOUND};
use revnet::racn::{backward_relations, racn_configurations, racn_coproduct, validate_racn, Racn};
use revnet::relation::Rel;
use revnet::{Error, ValidationReport};

#[derive(Parser)]
#[command(name = "revnet", version, about = "Reversible event structures and causal nets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a model against the axioms of its kind (or of --as).
    Validate {
        file: String,
        #[arg(long = "as")]
        as_kind: Option<String>,
    },
    /// Print the derived relations of a model.
    Relations { file: String },
    /// Print the configuration graph.
    Configs {
        file: String,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        mixed_steps: bool,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Print the reachable markings of a net.
    Reach {
        file: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Fire a comma-separated sequence of transitions from the initial marking.
    Fire {
        file: String,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<String>,
    },
    /// Translate between models.
    Translate {
        file: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        saturate: bool,
        /// JSON file with optional "pre", "post" and "undo" name maps.
        #[arg(long)]
        names: Option<String>,
    },
    /// Check a morphism file between two models.
    CheckMorphism { src: String, dst: String, map: String },
    /// Print the coproduct of two models.
    Coproduct { first: String, second: String },
    /// Print the states (fired-transition counts) of a net.
    States {
        file: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Render a model as DOT.
    Dot { file: String },
}

enum Fail {
    Usage(String),
    Invalid(Value),
}

impl From<ParseError> for Fail {
    fn from(e: ParseError) -> Self {
        Fail::Usage(e.to_string())
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(r) => Fail::Invalid(r.to_json()),
            other => Fail::Invalid(json!({ "error": other.to_string() })),
        }
    }
}

type Out = Result<(String, bool), Fail>;

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn report(r: ValidationReport) -> Out {
    let ok = r.passed();
    Ok((pretty(&r.to_json()), ok))
}

fn net_of(m: Model) -> Result<(Kind, Racn), Fail> {
    match m {
        Model::Net { kind, net } => Ok((kind, net)),
        other => Err(Fail::Usage(format!("expected a net, got a {} model", other.kind().as_str()))),
    }
}

fn raes_of(m: Model) -> Result<Raes, Fail> {
    match m {
        Model::Es { spec, .. } => Ok(Raes::from_spec(&spec)?),
        Model::Sraes(k) => Ok(sraes_to_raes(&k)?),
        other => Err(Fail::Usage(format!("expected an event structure, got a {} model", other.kind().as_str()))),
    }
}

fn ipt_report(net: &Ipt) -> Result<ValidationReport, Fail> {
    let mut r = ValidationReport::new("ipt");
    if !net.is_safe(DEFAULT_BOUND)? {
        r.violate("ipt-safe", Vec::<String>::new(), "some reachable marking puts two tokens on a place");
    }
    Ok(r)
}

fn validate(file: &str, as_kind: Option<&str>) -> Out {
    let model = io::load(file)?;
    let kind = as_kind.unwrap_or(model.kind().as_str()).to_string();
    match (&model, kind.as_str()) {
        (Model::Net { net, .. }, k) => match k {
            "ipt" => report(ipt_report(net.net())?),
            "pacn" => report(validate_pacn(net.net())),
            "acn" => report(validate_acn(net.net())),
            "cn" => report(validate_cn(net.net())),
            "racn" => report(validate_racn(net)),
            _ => Err(Fail::Usage(format!("cannot validate a net as `{k}`"))),
        },
        (Model::Es { spec, .. }, k) => match k {
            "aes" => report(validate_aes(&Aes::from_spec(spec)?)),
            "raes" => report(validate_raes(&Raes::from_spec(spec)?)),
            _ => Err(Fail::Usage(format!("cannot validate an event structure as `{k}`"))),
        },
        (Model::Sraes(k), "sraes") => report(validate_sraes(k)),
        (Model::Sraes(_), k) => Err(Fail::Usage(format!("cannot validate an sraes file as `{k}`"))),
    }
}

fn pairs_json(r: &Rel, name: impl Fn(usize) -> String) -> Value {
    Value::Array(r.pairs().into_iter().map(|(a, b)| json!([name(a), name(b)])).collect())
}

fn relations(file: &str) -> Out {
    let v = match io::load(file)? {
        Model::Net { net: v, .. } => {
            let n = v.net();
            let name = |t: usize| n.trans_name(t).to_string();
            let d = derived_relations(n);
            let mut out = json!({
                "lessdot": pairs_json(&d.lessdot, name),
                "prevention": pairs_json(&d.prevention, name),
                "leadsto": pairs_json(&d.leadsto, name),
                "conflict": pairs_json(&d.conflict, name),
            });
            if v.backward().count_ones(..) > 0 {
                let b = backward_relations(&v)?;
                out["rev_causation"] = pairs_json(&b.rev_causation, name);
                out["rev_prevention"] = pairs_json(&b.rev_prevention, name);
                out["sustained"] = pairs_json(&b.sustained, name);
            }
            out
        }
        m => {
            let h = raes_of(m)?;
            let name = |e: usize| h.event_name(e).to_string();
            json!({
                "causation": pairs_json(&h.causation, name),
                "weak_causality": pairs_json(&h.weak, name),
                "conflict": pairs_json(&h.conflict(), name),
                "sustained": pairs_json(&sustained_causation(&h), name),
                "rev_causation": pairs_json(&h.rev_causation, name),
                "prevention": pairs_json(&h.prevention, name),
            })
        }
    };
    Ok((pretty(&v), true))
}

fn configs(file: &str, dot: bool, mixed: bool, bound: usize) -> Out {
    let g = match io::load(file)? {
        Model::Net { net, .. } => {
            if mixed {
                return Err(Fail::Usage("--mixed-steps applies to event structures only".into()));
            }
            racn_configurations(&net, bound)?
        }
        m => raes_config_graph(&raes_of(m)?, mixed, bound)?,
    };
    Ok((if dot { io::graph_to_dot(&g) } else { pretty(&io::graph_to_json(&g)) }, true))
}

fn reach(file: &str, bound: usize) -> Out {
    let (_, v) = net_of(io::load(file)?)?;
    let net = v.net();
    let g = net.reachable_markings(bound)?;
    let out = json!({
        "markings": g.markings.iter().map(|m| net.names_of_places(m)).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|&(i, t, j)| json!({"from": i, "transition": net.trans_name(t), "to": j})).collect::<Vec<_>>(),
    });
    Ok((pretty(&out), true))
}

fn fire(file: &str, seq: &[String]) -> Out {
    let (_, v) = net_of(io::load(file)?)?;
    let net = v.net();
    let ids = seq
        .iter()
        .map(|t| net.trans_id(t).ok_or_else(|| Fail::Usage(format!("unknown transition `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let m = net.fire_sequence(&ids)?;
    Ok((pretty(&json!({ "marking": net.names_of_places(&m) })), true))
}

fn names_file(path: Option<&str>) -> Result<NamingScheme, Fail> {
    let Some(path) = path else {
        return Ok(NamingScheme::default());
    };
    let v = io::parse_json(&io::read(path)?)?;
    let field = |k: &str| -> Result<BTreeMap<String, String>, Fail> {
        match v.get(k) {
            None => Ok(BTreeMap::new()),
            Some(Value::Object(m)) => m
                .iter()
                .map(|(a, b)| match b {
                    Value::String(b) => Ok((a.clone(), b.clone())),
                    _ => Err(Fail::Usage(format!("names: `{k}` must map events to strings"))),
                })
                .collect(),
            Some(_) => Err(Fail::Usage(format!("names: `{k}` must be an object"))),
        }
    };
    Ok(NamingScheme { pre: field("pre")?, post: field("post")?, undo: field("undo")? })
}

fn es_model(h: &Raes) -> Model {
    Model::Es { kind: Kind::Raes, spec: h.to_spec() }
}

fn translate(file: &str, to: &str, sat: bool, names: Option<&str>) -> Out {
    let model = io::load(file)?;
    let out = match (model, to) {
        (Model::Net { kind: Kind::Cn, net }, "acn") => Model::Net {
            kind: Kind::Acn,
            net: Racn::forward_only(cn_to_acn(net.net())?),
        },
        (Model::Net { net, .. }, "raes") => es_model(&racn_to_raes(&net)?),
        (Model::Net { net, .. }, "sraes") => Model::Sraes(raes_to_sraes(&racn_to_raes(&net)?)?),
        (m @ (Model::Es { .. } | Model::Sraes(_)), to) => {
            let mut h = raes_of(m)?;
            if sat {
                h = saturate(&h)?;
            }
            match to {
                "racn" => Model::Net { kind: Kind::Racn, net: raes_to_racn(&h, &names_file(names)?)? },
                "raes" => {
                    let r = validate_raes(&h);
                    if !r.passed() {
                        return report(r);
                    }
                    es_model(&h)
                }
                "sraes" => Model::Sraes(raes_to_sraes(&h)?),
                _ => return Err(Fail::Usage(format!("cannot translate an event structure to `{to}`"))),
            }
        }
        (m, to) => return Err(Fail::Usage(format!("cannot translate a {} model to `{to}`", m.kind().as_str()))),
    };
    Ok((io::to_canonical(&out), true))
}

fn check_morphism(src: &str, dst: &str, map: &str) -> Out {
    let (a, b) = (io::load(src)?, io::load(dst)?);
    let f = io::parse_morphism(&io::read(map)?)?;
    match (a, b, f) {
        (Model::Net { kind: k0, net: v0 }, Model::Net { kind: k1, net: v1 }, MorphismFile::Net(f)) => {
            if k0 == Kind::Racn || k1 == Kind::Racn {
                report(check_racn_morphism(&v0, &v1, &f))
            } else {
                report(check_acn_morphism(v0.net(), v1.net(), &f))
            }
        }
        (Model::Es { kind: Kind::Aes, spec: s0 }, Model::Es { kind: Kind::Aes, spec: s1 }, MorphismFile::Es(f)) => {
            report(check_aes_morphism(&Aes::from_spec(&s0)?, &Aes::from_spec(&s1)?, &f))
        }
        (a @ (Model::Es { .. } | Model::Sraes(_)), b @ (Model::Es { .. } | Model::Sraes(_)), MorphismFile::Es(f)) => {
            report(check_raes_morphism(&raes_of(a)?, &raes_of(b)?, &f))
        }
        _ => Err(Fail::Usage("the morphism file does not match the kinds of the two models".into())),
    }
}

fn coproduct(first: &str, second: &str) -> Out {
    match (io::load(first)?, io::load(second)?) {
        (Model::Net { net: v0, .. }, Model::Net { net: v1, .. }) => {
            let (sum, _) = racn_coproduct(&v0, &v1)?;
            Ok((io::to_canonical(&Model::Net { kind: Kind::Racn, net: sum }), true))
        }
        (a, b) if !a.kind().is_net() && !b.kind().is_net() => {
            let (sum, _) = raes_coproduct(&raes_of(a)?, &raes_of(b)?)?;
            Ok((io::to_canonical(&es_model(&sum)), true))
        }
        _ => Err(Fail::Usage("coproduct needs two nets or two event structures".into())),
    }
}

fn states(file: &str, bound: usize) -> Out {
    let (_, v) = net_of(io::load(file)?)?;
    let st = v.net().states(false, bound)?;
    let list: Vec<Value> = st.iter().map(|s| json!(s.iter().filter(|(_, &c)| c > 0).collect::<BTreeMap<_, _>>())).collect();
    Ok((pretty(&json!({ "states": list })), true))
}

fn dot(file: &str) -> Out {
    Ok((
        match io::load(file)? {
            Model::Net { net, .. } => io::net_to_dot(&net),
            Model::Es { spec, .. } => io::es_to_dot(&spec),
            Model::Sraes(k) => io::es_to_dot(&sraes_to_raes(&k)?.to_spec()),
        },
        true,
    ))
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Validate { file, as_kind } => validate(&file, as_kind.as_deref()),
        Cmd::Relations { file } => relations(&file),
        Cmd::Configs { file, dot, json: _, mixed_steps, bound } => configs(&file, dot, mixed_steps, bound),
        Cmd::Reach { file, bound } => reach(&file, bound),
        Cmd::Fire { file, seq } => fire(&file, &seq),
        Cmd::Translate { file, to, saturate, names } => translate(&file, &to, saturate, names.as_deref()),
        Cmd::CheckMorphism { src, dst, map } => check_morphism(&src, &dst, &map),
        Cmd::Coproduct { first, second } => coproduct(&first, &second),
        Cmd::States { file, bound } => states(&file, bound),
        Cmd::Dot { file } => dot(&file),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((text, ok)) => {
            print!("{text}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Fail::Invalid(v)) => {
            print!("{}", pretty(&v));
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
