mod common;

use std::collections::BTreeMap;

use common::EsOracle;
use revnet::bridge::{
    map_morphism_es_to_net, map_morphism_net_to_es, raes_to_racn, racn_to_raes, round_trip_report, NamingScheme,
};
use revnet::es::{saturate, validate_raes, EsSpec, Raes};
use revnet::fixtures;
use revnet::morphism::{all_event_maps, check_racn_morphism, check_raes_morphism, compose_es, compose_net};
use revnet::racn::{racn_configurations, validate_racn};
use revnet::random::{random_raes, rng};

fn s(x: &str) -> String {
    x.to_string()
}

/// Names matching the hand-drawn nets: `s1..s3` before, `s4..s6` after, `un_x` to undo.
fn fixture_names() -> NamingScheme {
    let m = |xs: &[(&str, &str)]| xs.iter().map(|(a, b)| (s(a), s(b))).collect::<BTreeMap<_, _>>();
    NamingScheme {
        pre: m(&[("a", "s1"), ("b", "s2"), ("c", "s3")]),
        post: m(&[("a", "s4"), ("b", "s5"), ("c", "s6")]),
        undo: m(&[("a", "un_a"), ("b", "un_b")]),
    }
}

fn valid_structures() -> Vec<(String, Raes)> {
    let mut out: Vec<(String, Raes)> =
        ["h_intro", "h", "h_prime"].iter().map(|n| (s(n), fixtures::raes(n))).collect();
    out.push((s("speculative+"), saturate(&fixtures::raes("speculative")).unwrap()));
    let mut r = rng(3);
    for i in 0..60 {
        let h = random_raes(&mut r, 4, "e");
        if validate_raes(&h).passed() {
            out.push((format!("random {i}"), h));
        }
    }
    out
}

#[test]
fn intro_structure_encodes_to_the_reversible_net_up_to_two_arcs() {
    let v = raes_to_racn(&fixtures::raes("h_intro"), &fixture_names()).unwrap();
    let want = fixtures::net("n_r_rev");
    let (got, mut want_spec) = (v.net().to_spec(), want.net().to_spec());
    // a weakly precedes b in the structure, b and c are symmetric in the net
    want_spec.inhibitor.insert((s("s5"), s("a")));
    want_spec.inhibitor.remove(&(s("s5"), s("c")));
    assert_eq!(got, want_spec);
    assert_eq!(v.backward_map(), want.backward_map());
}

#[test]
fn reversible_net_decodes_to_the_intro_structure_up_to_weak_causality() {
    let h = racn_to_raes(&fixtures::net("n_r_rev")).unwrap();
    let mut want = fixtures::es_spec("h_intro");
    want.weak_causality.remove(&(s("a"), s("b")));
    want.weak_causality.insert((s("c"), s("b")));
    assert_eq!(h.to_spec(), want);
}

#[test]
fn empty_structure_gives_empty_net() {
    let v = raes_to_racn(&Raes::from_spec(&EsSpec::default()).unwrap(), &NamingScheme::default()).unwrap();
    assert_eq!(v.net().n_places(), 0);
    assert_eq!(v.net().n_transitions(), 0);
    assert!(racn_to_raes(&v).unwrap().events().is_empty());
}

#[test]
fn naming_clash_is_refused() {
    let h = fixtures::raes("h_intro");
    let names = NamingScheme {
        pre: [(s("a"), s("b"))].into_iter().collect(),
        ..NamingScheme::default()
    };
    assert!(matches!(raes_to_racn(&h, &names), Err(revnet::Error::NameClash(_))));
}

#[test]
fn encoding_behaves_like_the_structure() {
    for (name, h) in valid_structures() {
        let v = raes_to_racn(&h, &NamingScheme::default()).unwrap();
        assert!(validate_racn(&v).passed(), "{name}");
        let g = racn_configurations(&v, 10_000).unwrap();
        let (nodes, edges) = EsOracle::new(&h.to_spec()).graph(false);
        assert_eq!(g.nodes, nodes, "{name}");
        assert_eq!(g.edges, edges, "{name}");
    }
}

#[test]
fn round_trips() {
    for (name, h) in valid_structures() {
        let r = round_trip_report(&h, 10_000).unwrap();
        assert!(r.passed(), "{name}: {}", r.to_json());
        let back = racn_to_raes(&raes_to_racn(&h, &NamingScheme::default()).unwrap()).unwrap();
        assert_eq!(back.to_spec(), h.to_spec(), "{name}");
    }
}

#[test]
fn net_morphism_gives_event_morphism() {
    let names = NamingScheme::default();
    for (name, h) in valid_structures() {
        let v = raes_to_racn(&h, &names).unwrap();
        let f = map_morphism_net_to_es(&v, &revnet::morphism::NetMorphism::identity(v.net()));
        assert_eq!(f, revnet::morphism::EsMorphism::identity(h.events()), "{name}");
        let back = racn_to_raes(&v).unwrap();
        assert!(check_raes_morphism(&back, &back, &f).passed(), "{name}");
    }
    let v = fixtures::net("n_r_rev");
    let f = map_morphism_net_to_es(&v, &revnet::morphism::NetMorphism::identity(v.net()));
    assert!(!f.map.contains_key("un_a"));
}

// The forward part of an rACN need only be a pACN, so a sustained c ⋖ b may
// come without c ⤳ b, and the decoded structure then misses c ↗ b.
#[test]
fn decoding_refuses_nets_without_sustained_weak_causality() {
    let v0 = fixtures::net("v0");
    assert!(validate_racn(&v0).passed());
    match racn_to_raes(&v0) {
        Err(revnet::Error::Invalid(r)) => {
            assert_eq!(r.witness_of("aes-causation-implies-weak").unwrap(), ["c", "b"])
        }
        other => panic!("expected a refusal, got {other:?}"),
    }
}

fn is_onto(f: &revnet::morphism::EsMorphism, dst: &Raes) -> bool {
    dst.events().iter().all(|e| f.map.values().any(|x| x.as_deref() == Some(e)))
}

// The encoding marks every pre place, so a net map can only match the target's
// initial marking when every target event has a preimage.
#[test]
fn event_morphisms_map_to_net_morphisms_exactly_when_onto() {
    let hs = valid_structures();
    let small: Vec<&(String, Raes)> = hs.iter().filter(|(_, h)| h.n() <= 3).take(8).collect();
    let names = NamingScheme::default();
    let (mut onto, mut other) = (0, 0);
    for (n0, h0) in &small {
        let v0 = raes_to_racn(h0, &names).unwrap();
        for (n1, h1) in &small {
            let v1 = raes_to_racn(h1, &names).unwrap();
            for f in all_event_maps(h0.events(), h1.events()) {
                if !check_raes_morphism(h0, h1, &f).passed() {
                    continue;
                }
                let g = map_morphism_es_to_net(h0, h1, &f, &names, &names).unwrap();
                let r = check_racn_morphism(&v0, &v1, &g);
                if is_onto(&f, h1) {
                    onto += 1;
                    assert!(r.passed(), "{n0} -> {n1} {:?}: {}", f.map, r.to_json());
                } else {
                    other += 1;
                    assert!(r.has("acn-morph-marking"), "{n0} -> {n1} {:?}", f.map);
                }
            }
        }
    }
    assert!(onto > 0 && other > 0);
}

#[test]
fn translation_respects_composition() {
    let h = fixtures::raes("h");
    let hp = fixtures::raes("h_prime");
    let names = NamingScheme::default();
    let id = revnet::morphism::EsMorphism::identity(h.events());
    let f = map_morphism_es_to_net(&h, &hp, &id, &names, &names).unwrap();
    let g = map_morphism_es_to_net(&hp, &hp, &id, &names, &names).unwrap();
    let gf = map_morphism_es_to_net(&h, &hp, &compose_es(&id, &id).unwrap(), &names, &names).unwrap();
    assert_eq!(compose_net(&f, &g).unwrap(), gf);
    let (v, vp) = (raes_to_racn(&h, &names).unwrap(), raes_to_racn(&hp, &names).unwrap());
    assert!(check_racn_morphism(&v, &vp, &f).passed());
}
