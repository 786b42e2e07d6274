mod common;

use std::collections::BTreeSet;

use common::{set, EsOracle, Names};
use revnet::es::{
    aes_configurations, raes_config_graph, raes_coproduct, raes_enabled_named, raes_to_sraes, saturate,
    sraes_to_raes, sustained_causation, validate_aes, validate_raes, validate_sraes, Aes, EsSpec, Raes, Target,
};
use revnet::fixtures;
use revnet::graph::Action;
use revnet::random::{random_raes, rng};
use revnet::Error;

const ES_FIXTURES: &[&str] = &["h_intro", "h", "h_prime"];

fn all_raes() -> Vec<(String, Raes)> {
    let mut out: Vec<(String, Raes)> = ES_FIXTURES.iter().map(|n| (n.to_string(), fixtures::raes(n))).collect();
    out.push(("speculative+".into(), saturate(&fixtures::raes("speculative")).unwrap()));
    for g in ["g", "g_prime"] {
        out.push((format!("{g} as raes"), Raes::from_aes(&fixtures::aes(g))));
    }
    let mut r = rng(11);
    for i in 0..40 {
        out.push((format!("random {i}"), random_raes(&mut r, 5, "e")));
    }
    out
}

fn pairs(h: &Raes, r: &revnet::relation::Rel) -> BTreeSet<(String, String)> {
    h.pair_names(r).into_iter().collect()
}

fn p(xs: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[test]
fn aes_verdicts() {
    assert!(validate_aes(&fixtures::aes("g")).passed());
    assert!(validate_aes(&fixtures::aes("g_prime")).passed());
    let empty = Aes::from_spec(&EsSpec::default()).unwrap();
    assert!(validate_aes(&empty).passed());

    let mut spec = fixtures::es_spec("g");
    spec.weak_causality.remove(&("a".to_string(), "c".to_string()));
    let r = validate_aes(&Aes::from_spec(&spec).unwrap());
    assert!(r.has("aes-causation-implies-weak"));
    assert_eq!(r.witness_of("aes-causation-implies-weak").unwrap(), ["a", "c"]);
}

#[test]
fn aes_configurations_match_brute_force() {
    for name in ["g", "g_prime"] {
        let g = fixtures::aes(name);
        let o = EsOracle::new(&g.to_spec());
        let got = aes_configurations(&g).unwrap();
        let names = got.names(&g);
        let want = o.aes_configs();
        assert_eq!(names.iter().cloned().collect::<BTreeSet<_>>(), want.into_iter().collect(), "{name}");

        for (i, x) in names.iter().enumerate() {
            for (j, y) in names.iter().enumerate() {
                let one_more = y.len() == x.len() + 1;
                assert_eq!(got.extends.contains(&(i, j)), one_more && o.extends(x, y), "{name}: {x:?} -> {y:?}");
            }
        }

        // reachable from the empty set along one-event extensions
        let mut reach: BTreeSet<Names> = BTreeSet::from([Names::new()]);
        let mut grew = true;
        while grew {
            grew = false;
            for x in reach.clone() {
                for y in &names {
                    if y.len() == x.len() + 1 && o.extends(&x, y) && reach.insert(y.clone()) {
                        grew = true;
                    }
                }
            }
        }
        for (i, x) in names.iter().enumerate() {
            assert_eq!(got.reachable[i], reach.contains(x), "{name}: {x:?}");
        }
    }
}

#[test]
fn g_prime_mutual_weak_causality() {
    // a and b weakly precede each other, so they never coexist
    let g = fixtures::aes("g_prime");
    let names = aes_configurations(&g).unwrap().names(&g);
    assert!(!names.contains(&set(&["a", "b"])));
    assert!(names.contains(&set(&["a", "c"])));
}

#[test]
fn sustained_causation_cases() {
    let h = fixtures::raes("h");
    assert_eq!(pairs(&h, &sustained_causation(&h)), pairs(&h, &h.causation));
    let hp = fixtures::raes("h_prime");
    assert_eq!(pairs(&hp, &sustained_causation(&hp)), p(&[("a", "c")]));
    let g = Raes::from_aes(&fixtures::aes("g"));
    assert_eq!(pairs(&g, &sustained_causation(&g)), pairs(&g, &g.causation));
}

#[test]
fn raes_verdicts() {
    assert!(validate_raes(&fixtures::raes("h_intro")).passed());
    assert!(validate_raes(&fixtures::raes("h")).passed());
    assert!(validate_raes(&fixtures::raes("h_prime")).passed());
    assert!(!validate_raes(&fixtures::raes("speculative")).passed());
    assert!(validate_raes(&saturate(&fixtures::raes("speculative")).unwrap()).passed());

    let mut spec = fixtures::es_spec("h_intro");
    spec.rev_causation.remove(&("b".to_string(), "b".to_string()));
    let r = validate_raes(&Raes::from_spec(&spec).unwrap());
    assert!(r.has("raes-undo-self-cause"));
    assert_eq!(r.witness_of("raes-undo-self-cause").unwrap(), ["b"]);
}

#[test]
fn rev_causation_must_target_reversible() {
    let spec = EsSpec::build(&["a", "b"], &["a"], &[], &[], &[("a", "b")], &[]);
    assert!(matches!(Raes::from_spec(&spec), Err(Error::NotReversible(_))));
}

#[test]
fn enabling_examples() {
    let h = fixtures::raes("h_intro");
    let en = |x: &[&str], a: &[&str], b: &[&str]| raes_enabled_named(&h, x, a, b).unwrap();
    assert!(en(&[], &["a"], &[]));
    assert!(!en(&[], &["b"], &[]));
    assert!(en(&["a"], &["b"], &[]));
    assert!(en(&["a", "b"], &[], &["b"]));
    // undoing a is prevented while c is present
    assert!(en(&["a"], &[], &["a"]));
    assert!(!en(&["a", "c"], &[], &["a"]));
    // b weakly precedes c, so b cannot follow c
    assert!(!en(&["a", "c"], &["b"], &[]));
    // b needs a to stay, so a cannot be undone in the same step
    assert!(!en(&["a"], &["b"], &["a"]));
    // undoing a under b is allowed
    assert!(en(&["a", "b"], &[], &["a"]));
    // c is not reversible
    assert!(!en(&["c"], &[], &["c"]));
}

#[test]
fn enabling_matches_oracle_everywhere() {
    for (name, h) in all_raes() {
        let o = EsOracle::new(&h.to_spec());
        let n = h.n();
        assert!(n <= 5);
        let ev = h.events().to_vec();
        let sub = |m: u32| -> Vec<&str> { (0..n).filter(|i| m >> i & 1 == 1).map(|i| ev[i].as_str()).collect() };
        for x in 0u32..1 << n {
            for a in 0u32..1 << n {
                for b in 0u32..1 << n {
                    let (xs, as_, bs) = (sub(x), sub(a), sub(b));
                    let got = raes_enabled_named(&h, &xs, &as_, &bs).unwrap();
                    assert_eq!(got, o.enabled(&set(&xs), &set(&as_), &set(&bs)), "{name}: {xs:?} {as_:?} {bs:?}");
                }
            }
        }
    }
}

#[test]
fn config_graph_matches_oracle() {
    for (name, h) in all_raes() {
        if !validate_raes(&h).passed() {
            continue;
        }
        let o = EsOracle::new(&h.to_spec());
        for mixed in [false, true] {
            let g = raes_config_graph(&h, mixed, 10_000).unwrap();
            let (nodes, edges) = o.graph(mixed);
            assert_eq!(g.nodes, nodes, "{name} mixed={mixed}");
            assert_eq!(g.edges, edges, "{name} mixed={mixed}");
        }
    }
}

#[test]
fn single_and_mixed_steps_reach_the_same_configurations() {
    for (name, h) in all_raes() {
        if !validate_raes(&h).passed() {
            continue;
        }
        let single = raes_config_graph(&h, false, 10_000).unwrap();
        let mixed = raes_config_graph(&h, true, 10_000).unwrap();
        assert_eq!(single.nodes, mixed.nodes, "{name}");
    }
}

#[test]
fn edges_apply_their_label() {
    for (name, h) in all_raes() {
        if !validate_raes(&h).passed() {
            continue;
        }
        let g = raes_config_graph(&h, true, 10_000).unwrap();
        for (x, label, y) in &g.edges {
            let mut want = x.clone();
            for act in label {
                match act {
                    Action::Undo(u) => assert!(want.remove(u), "{name}"),
                    Action::Do(_) => {}
                }
            }
            for act in label {
                if let Action::Do(e) = act {
                    assert!(want.insert(e.clone()), "{name}");
                }
            }
            assert_eq!(&want, y, "{name}");
        }
    }
}

#[test]
fn forward_only_matches_aes_reachability() {
    for name in ["g", "g_prime"] {
        let g = fixtures::aes(name);
        let confs = aes_configurations(&g).unwrap();
        let reach: BTreeSet<Names> = confs
            .names(&g)
            .into_iter()
            .zip(&confs.reachable)
            .filter(|(_, r)| **r)
            .map(|(c, _)| c)
            .collect();
        let graph = raes_config_graph(&Raes::from_aes(&g), false, 1000).unwrap();
        assert_eq!(graph.nodes, reach, "{name}");
    }
}

#[test]
fn h_intro_graph() {
    let g = raes_config_graph(&fixtures::raes("h_intro"), false, 100).unwrap();
    let want: BTreeSet<Names> = [
        set(&[]),
        set(&["a"]),
        set(&["c"]),
        set(&["a", "b"]),
        set(&["a", "c"]),
        set(&["b"]),
        set(&["a", "b", "c"]),
        set(&["b", "c"]),
    ]
    .into_iter()
    .collect();
    assert_eq!(g.nodes, want);
    // out-of-causal-order: undo a while b stays
    assert!(g.has_edge(&["a", "b"], &[Action::Undo("a".into())], &["b"]));
    assert!(!g.has_edge(&["a", "c"], &[Action::Undo("a".into())], &["c"]));
}

#[test]
fn coproduct_with_empty_is_a_copy() {
    let empty = Raes::from_spec(&EsSpec::default()).unwrap();
    for name in ES_FIXTURES {
        let h = fixtures::raes(name);
        let (sum, _) = raes_coproduct(&h, &empty).unwrap();
        let mut spec = sum.to_spec();
        let strip = |s: &String| s.strip_prefix("0:").unwrap().to_string();
        let strip2 = |ps: &BTreeSet<(String, String)>| ps.iter().map(|(a, b)| (strip(a), strip(b))).collect();
        spec = EsSpec {
            events: spec.events.iter().map(strip).collect(),
            reversible: spec.reversible.iter().map(strip).collect(),
            causation: strip2(&spec.causation),
            weak_causality: strip2(&spec.weak_causality),
            rev_causation: strip2(&spec.rev_causation),
            prevention: strip2(&spec.prevention),
        };
        assert_eq!(spec, h.to_spec(), "{name}");
    }
}

#[test]
fn coproduct_components_exclude_each_other() {
    let h = fixtures::raes("h_intro");
    let (sum, inj) = raes_coproduct(&h, &h).unwrap();
    assert!(validate_raes(&sum).passed());
    for i in &inj {
        assert!(revnet::morphism::check_raes_morphism(&h, &sum, i).passed());
    }
    let conflict = sum.conflict();
    let a0 = sum.event_id("0:a").unwrap();
    let a1 = sum.event_id("1:a").unwrap();
    assert!(conflict.contains(a0, a1));

    let g = raes_config_graph(&sum, false, 10_000).unwrap();
    let n0 = raes_config_graph(&h, false, 10_000).unwrap().nodes.len();
    assert_eq!(g.nodes.len(), 2 * n0 - 1);
    for x in &g.nodes {
        assert!(!(x.iter().any(|e| e.starts_with("0:")) && x.iter().any(|e| e.starts_with("1:"))));
    }
}

#[test]
fn coproduct_node_count_is_the_glued_sum() {
    let fx: Vec<Raes> = ES_FIXTURES.iter().map(|n| fixtures::raes(n)).collect();
    for h0 in &fx {
        for h1 in &fx {
            let (sum, _) = raes_coproduct(h0, h1).unwrap();
            let count = |h: &Raes| raes_config_graph(h, false, 10_000).unwrap().nodes.len();
            assert_eq!(count(&sum), count(h0) + count(h1) - 1);
        }
    }
}

#[test]
fn merged_presentation() {
    let h = fixtures::raes("h_intro");
    let k = raes_to_sraes(&h).unwrap();
    let want: BTreeSet<(String, Target)> = [
        ("a", Target::Event("b".into())),
        ("a", Target::Undo("a".into())),
        ("b", Target::Undo("b".into())),
    ]
    .into_iter()
    .map(|(e, t)| (e.to_string(), t))
    .collect();
    assert_eq!(k.causation, want);
    assert!(k.precedence.contains(&(Target::Undo("a".into()), "c".into())));
    assert!(k.precedence.contains(&(Target::Event("b".into()), "c".into())));
}

#[test]
fn merged_presentation_round_trips() {
    for (name, h) in all_raes() {
        if !validate_raes(&h).passed() {
            assert!(raes_to_sraes(&h).is_err(), "{name}");
            continue;
        }
        let k = raes_to_sraes(&h).unwrap();
        assert!(validate_sraes(&k).passed(), "{name}");
        let back = sraes_to_raes(&k).unwrap();
        assert_eq!(back.to_spec(), h.to_spec(), "{name}");
        assert_eq!(raes_to_sraes(&back).unwrap(), k, "{name}");
    }
}

#[test]
fn invalid_merged_presentation_is_refused() {
    let mut k = raes_to_sraes(&fixtures::raes("h_intro")).unwrap();
    k.causation.remove(&("b".to_string(), Target::Undo("b".into())));
    let r = validate_sraes(&k);
    assert!(r.has("sraes-undo-self-cause"));
    assert!(sraes_to_raes(&k).is_err());
}
