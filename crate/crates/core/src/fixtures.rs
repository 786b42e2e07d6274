//! Bundled example models, parsed from the JSON files under `fixtures/`.

use crate::es::{Aes, EsSpec, Raes};
use crate::io::{parse_model, parse_morphism, Model, MorphismFile};
use crate::morphism::NetMorphism;
use crate::racn::Racn;

macro_rules! table {
    ($($name:literal),* $(,)?) => {
        /// Every bundled file as `(name, text)`.
        pub const FILES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../fixtures/", $name, ".json")))),*
        ];
    };
}

table!(
    "c0", "c1", "cn_1", "cn_2", "cn_3", "cn_4", "cn_5", "empty_net", "f_c", "f_v", "g", "g_prime", "h", "h_intro",
    "h_prime", "n_1", "n_2", "n_3", "n_4", "n_r", "n_r_rev", "speculative", "v", "v0", "v1", "v_out_of_order",
    "v_prime",
);

pub const MORPHISMS: &[&str] = &["f_c", "f_v"];

pub fn text(name: &str) -> &'static str {
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .unwrap_or_else(|| panic!("no fixture named {name}"))
}

pub fn model(name: &str) -> Model {
    parse_model(text(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// Any net fixture, as an rACN (empty backward map unless the file is an rACN).
pub fn net(name: &str) -> Racn {
    match model(name) {
        Model::Net { net, .. } => net,
        m => panic!("fixture {name} is a {:?}, not a net", m.kind()),
    }
}

pub fn es_spec(name: &str) -> EsSpec {
    match model(name) {
        Model::Es { spec, .. } => spec,
        m => panic!("fixture {name} is a {:?}, not a structure", m.kind()),
    }
}

pub fn raes(name: &str) -> Raes {
    Raes::from_spec(&es_spec(name)).expect("fixture names are declared")
}

pub fn aes(name: &str) -> Aes {
    Aes::from_spec(&es_spec(name)).expect("fixture names are declared")
}

pub fn net_morphism(name: &str) -> NetMorphism {
    match parse_morphism(text(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}")) {
        MorphismFile::Net(m) => m,
        MorphismFile::Es(_) => panic!("fixture {name} is an event map"),
    }
}

/// Names of net and structure fixtures by kind tag.
pub fn names_of_kind(kinds: &[&str]) -> Vec<&'static str> {
    FILES
        .iter()
        .filter(|(n, _)| !MORPHISMS.contains(n))
        .filter(|(n, _)| kinds.contains(&model(n).kind().as_str()))
        .map(|(n, _)| *n)
        .collect()
}
