//! Translations between reversible event structures and reversible causal
//! nets, on objects and on morphisms, with round-trip checks.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::es::{raes_config_graph, validate_raes, EsSpec, Raes};
use crate::graph::graph_iso;
use crate::morphism::{EsMorphism, NetMorphism};
use crate::net::NetSpec;
use crate::racn::{backward_relations, forward_relations, racn_configurations, validate_racn, Racn};
use crate::report::ValidationReport;

/// Place and transition names generated by [`raes_to_racn`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NamingScheme {
    pub pre: BTreeMap<String, String>,
    pub post: BTreeMap<String, String>,
    pub undo: BTreeMap<String, String>,
}

impl NamingScheme {
    /// Name of the place marked until `e` happens.
    pub fn pre_place(&self, e: &str) -> String {
        self.pre.get(e).cloned().unwrap_or_else(|| format!("p:{e}"))
    }

    /// Name of the place marked once `e` has happened.
    pub fn post_place(&self, e: &str) -> String {
        self.post.get(e).cloned().unwrap_or_else(|| format!("q:{e}"))
    }

    pub fn undo_transition(&self, u: &str) -> String {
        self.undo.get(u).cloned().unwrap_or_else(|| format!("undo:{u}"))
    }

    /// Every generated name must be fresh.
    fn check(&self, h: &EsSpec) -> Result<()> {
        let mut seen: BTreeSet<String> = h.events.clone();
        let generated = h
            .events
            .iter()
            .flat_map(|e| [self.pre_place(e), self.post_place(e)])
            .chain(h.reversible.iter().map(|u| self.undo_transition(u)));
        for name in generated {
            if !seen.insert(name.clone()) {
                return Err(Error::NameClash(name));
            }
        }
        Ok(())
    }
}

fn expect(report: ValidationReport) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::invalid(report))
    }
}

/// One transition per event between a fresh pre place and a fresh post place,
/// one reversing transition per reversible event, and an inhibitor arc for
/// every pair of every relation.
pub fn raes_to_racn(h: &Raes, names: &NamingScheme) -> Result<Racn> {
    expect(validate_raes(h))?;
    let es = h.to_spec();
    names.check(&es)?;
    let (p, q, undo) = (
        |e: &str| names.pre_place(e),
        |e: &str| names.post_place(e),
        |u: &str| names.undo_transition(u),
    );
    let mut spec = NetSpec::default();
    let mut backward = BTreeMap::new();
    for e in &es.events {
        spec.places.insert(p(e));
        spec.places.insert(q(e));
        spec.transitions.insert(e.clone());
        spec.flow.insert((p(e), e.clone()));
        spec.flow.insert((e.clone(), q(e)));
        spec.marking.insert(p(e));
    }
    for u in &es.reversible {
        spec.transitions.insert(undo(u));
        spec.flow.insert((q(u), undo(u)));
        spec.flow.insert((undo(u), p(u)));
        spec.inhibitor.insert((p(u), undo(u)));
        backward.insert(undo(u), u.clone());
    }
    for (e, e2) in &es.causation {
        spec.inhibitor.insert((p(e), e2.clone()));
    }
    for (e, e2) in &es.weak_causality {
        spec.inhibitor.insert((q(e2), e.clone()));
    }
    for (e, u) in &es.rev_causation {
        spec.inhibitor.insert((p(e), undo(u)));
    }
    for (u, e) in &es.prevention {
        spec.inhibitor.insert((q(e), undo(u)));
    }
    let v = Racn::from_spec(&spec, &backward)?;
    expect(validate_racn(&v))?;
    Ok(v)
}

/// Forward transitions become events; `<` is `⋖`, `↗` is `⤳`, and the
/// backward relations give reverse causation and prevention.
pub fn racn_to_raes(v: &Racn) -> Result<Raes> {
    expect(validate_racn(v))?;
    let net = v.net();
    let name = |t: usize| net.trans_name(t).to_string();
    let d = forward_relations(v);
    let b = backward_relations(v)?;
    let rev = |t: usize| name(v.reversed(t).expect("backward transition"));
    let spec = EsSpec {
        events: v.forward().ones().map(name).collect(),
        reversible: v.reversible(),
        causation: d.lessdot.pairs().into_iter().map(|(a, c)| (name(a), name(c))).collect(),
        weak_causality: d.leadsto.pairs().into_iter().map(|(a, c)| (name(a), name(c))).collect(),
        rev_causation: b.rev_causation.pairs().into_iter().map(|(t, u)| (name(t), rev(u))).collect(),
        prevention: b.rev_prevention.pairs().into_iter().map(|(u, t)| (rev(u), name(t))).collect(),
    };
    let h = Raes::from_spec(&spec)?;
    expect(validate_raes(&h))?;
    Ok(h)
}

/// Event map of a net morphism: `f_T` restricted to forward transitions.
pub fn map_morphism_net_to_es(v0: &Racn, f: &NetMorphism) -> EsMorphism {
    let fwd: BTreeSet<String> = v0.net().names_of_transitions(v0.forward()).into_iter().collect();
    EsMorphism {
        map: f
            .transitions
            .iter()
            .filter(|(t, _)| fwd.contains(*t))
            .map(|(t, img)| (t.clone(), img.clone()))
            .collect(),
    }
}

/// Net morphism between the encodings of `h0` and `h1`: transitions follow the
/// event map, reversers follow their events, and the pre and post places of
/// each event are related to those of its image.
pub fn map_morphism_es_to_net(
    h0: &Raes,
    h1: &Raes,
    f: &EsMorphism,
    names0: &NamingScheme,
    names1: &NamingScheme,
) -> Result<NetMorphism> {
    let mut out = NetMorphism::default();
    for e in h0.events() {
        let img = match f.map.get(e) {
            Some(img) => img.clone(),
            None => return Err(Error::Mismatch(format!("event `{e}` is neither mapped nor marked undefined"))),
        };
        if let Some(x) = &img {
            h1.event_id(x)?;
            out.places.insert((names0.pre_place(e), names1.pre_place(x)));
            out.places.insert((names0.post_place(e), names1.post_place(x)));
        }
        let id = h0.event_id(e)?;
        if h0.is_reversible(id) {
            let undo_img = match &img {
                Some(x) if h1.is_reversible(h1.event_id(x)?) => Some(names1.undo_transition(x)),
                _ => None,
            };
            out.transitions.insert(names0.undo_transition(e), undo_img);
        }
        out.transitions.insert(e.clone(), img);
    }
    Ok(out)
}

/// Relation-level round trip and configuration-graph isomorphism.
pub fn round_trip_report(h: &Raes, bound: usize) -> Result<ValidationReport> {
    let mut r = ValidationReport::new("round-trip");
    let v = raes_to_racn(h, &NamingScheme::default())?;
    let back = racn_to_raes(&v)?;
    let (a, b) = (h.to_spec(), back.to_spec());
    let diffs: [(&str, &crate::es::Pairs, &crate::es::Pairs); 4] = [
        ("causation", &a.causation, &b.causation),
        ("weak_causality", &a.weak_causality, &b.weak_causality),
        ("rev_causation", &a.rev_causation, &b.rev_causation),
        ("prevention", &a.prevention, &b.prevention),
    ];
    if a.events != b.events || a.reversible != b.reversible {
        r.violate("round-trip-relations", b.events.iter().cloned(), "events or reversible events differ after the round trip");
    }
    for (rel, x, y) in diffs {
        for (p, q) in x.symmetric_difference(y) {
            r.violate("round-trip-relations", [p.as_str(), q.as_str()], format!("{rel} differs after the round trip at ({p}, {q})"));
        }
    }
    let g_es = raes_config_graph(h, false, bound)?;
    let g_net = racn_configurations(&v, bound)?;
    let ids: BTreeMap<String, String> = h.events().iter().map(|e| (e.clone(), e.clone())).collect();
    if !graph_iso(&g_es, &g_net, &ids)? {
        r.violate(
            "round-trip-behaviour",
            Vec::<String>::new(),
            format!(
                "configuration graphs differ: {} nodes / {} edges against {} nodes / {} edges",
                g_es.nodes.len(),
                g_es.edges.len(),
                g_net.nodes.len(),
                g_net.edges.len()
            ),
        );
    }
    Ok(r)
}
