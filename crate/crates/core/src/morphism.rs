//! Morphisms of event structures and of causal nets: checkers, composition,
//! preservation oracles and the bounded mediating-morphism search.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use crate::acn::{derived_relations, is_coherent_with, relevant_with, validate_pacn, DerivedRelations};
use crate::error::{Error, Result};
use crate::es::{aes_configurations, is_aes_configuration, raes_config_graph, validate_aes, validate_raes, Aes, Raes};
use crate::exec::Exec;
use crate::graph::Config;
use crate::net::{Ipt, Marking};
use crate::racn::{forward_restriction, validate_racn, Racn};
use crate::relation::Rel;
use crate::report::ValidationReport;

/// Partial map on events; `None` is an explicit "undefined".
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EsMorphism {
    pub map: BTreeMap<String, Option<String>>,
}

impl EsMorphism {
    pub fn identity<'a>(events: impl IntoIterator<Item = &'a String>) -> Self {
        EsMorphism {
            map: events.into_iter().map(|e| (e.clone(), Some(e.clone()))).collect(),
        }
    }

    pub fn build(pairs: &[(&str, Option<&str>)]) -> Self {
        EsMorphism {
            map: pairs.iter().map(|(a, b)| (a.to_string(), b.map(str::to_string))).collect(),
        }
    }

    pub fn get(&self, e: &str) -> Option<&str> {
        self.map.get(e).and_then(|x| x.as_deref())
    }

    pub fn image(&self, xs: &Config) -> Config {
        xs.iter().filter_map(|e| self.get(e)).map(str::to_string).collect()
    }
}

/// Place relation `f_S` plus partial transition map `f_T`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NetMorphism {
    pub places: BTreeSet<(String, String)>,
    pub transitions: BTreeMap<String, Option<String>>,
}

impl NetMorphism {
    pub fn identity(net: &Ipt) -> Self {
        NetMorphism {
            places: net.places().iter().map(|p| (p.clone(), p.clone())).collect(),
            transitions: net.transitions().iter().map(|t| (t.clone(), Some(t.clone()))).collect(),
        }
    }

    pub fn build(places: &[(&str, &str)], transitions: &[(&str, Option<&str>)]) -> Self {
        NetMorphism {
            places: places.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            transitions: transitions.iter().map(|(a, b)| (a.to_string(), b.map(str::to_string))).collect(),
        }
    }

    pub fn get(&self, t: &str) -> Option<&str> {
        self.transitions.get(t).and_then(|x| x.as_deref())
    }

    /// Restriction of `f_T` to the given source transitions.
    pub fn restrict_transitions(&self, keep: &BTreeSet<String>) -> NetMorphism {
        NetMorphism {
            places: self.places.clone(),
            transitions: self
                .transitions
                .iter()
                .filter(|(t, _)| keep.contains(*t))
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect(),
        }
    }
}

/// Index-level view of a net morphism between two concrete nets.
struct NetMap {
    fs: Rel, // rows: source places; columns: target places (shifted)
    n0: usize,
    ft: Vec<Option<usize>>,
}

impl NetMap {
    fn image(&self, set: &FixedBitSet, n1: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(n1);
        for s in set.ones() {
            for t in self.fs.row(s).ones() {
                out.insert(t - self.n0);
            }
        }
        out
    }

    fn preimage(&self, s1: usize) -> FixedBitSet {
        let mut c = self.fs.column(self.n0 + s1);
        c.grow(self.n0);
        let mut out = FixedBitSet::with_capacity(self.n0);
        for s in c.ones().filter(|&s| s < self.n0) {
            out.insert(s);
        }
        out
    }
}

fn resolve_net_map(n0: &Ipt, n1: &Ipt, f: &NetMorphism, r: &mut ValidationReport) -> Option<NetMap> {
    let (p0, p1) = (n0.n_places(), n1.n_places());
    let mut fs = Rel::new(p0 + p1);
    let mut ok = true;
    for (a, b) in &f.places {
        match (n0.place_id(a), n1.place_id(b)) {
            (Some(i), Some(j)) => fs.insert(i, p0 + j),
            _ => {
                ok = false;
                r.violate("morphism-endpoints", [a.as_str(), b.as_str()], format!("place pair ({a}, {b}) is not declared in the nets"));
            }
        }
    }
    let mut ft = vec![None; n0.n_transitions()];
    for (t, img) in &f.transitions {
        let Some(i) = n0.trans_id(t) else {
            ok = false;
            r.violate("morphism-endpoints", [t.as_str()], format!("`{t}` is not a source transition"));
            continue;
        };
        if let Some(img) = img {
            match n1.trans_id(img) {
                Some(j) => ft[i] = Some(j),
                None => {
                    ok = false;
                    r.violate("morphism-endpoints", [t.as_str(), img.as_str()], format!("`{img}` is not a target transition"));
                }
            }
        }
    }
    for t in n0.transitions() {
        if !f.transitions.contains_key(t) {
            ok = false;
            r.violate("morphism-endpoints", [t.as_str()], format!("transition `{t}` is neither mapped nor marked undefined"));
        }
    }
    ok.then_some(NetMap { fs, n0: p0, ft })
}

fn both_conflict(d: &DerivedRelations, xs: &FixedBitSet, ys: &FixedBitSet) -> bool {
    xs.ones().all(|x| ys.ones().all(|y| d.conflict.contains(x, y)))
}

/// Clause evaluation for ACN-morphisms.
pub fn check_acn_morphism(n0: &Ipt, n1: &Ipt, f: &NetMorphism) -> ValidationReport {
    let mut r = ValidationReport::new("acn-morphism");
    r.absorb("source", validate_pacn(n0));
    r.absorb("target", validate_pacn(n1));
    let Some(m) = resolve_net_map(n0, n1, f, &mut r) else {
        return r;
    };
    acn_clauses(n0, n1, &derived_relations(n0), &m, &mut r);
    r
}

fn acn_clauses(n0: &Ipt, n1: &Ipt, d0: &DerivedRelations, m: &NetMap, r: &mut ValidationReport) {
    let p1 = n1.n_places();
    let tn0 = |t: usize| n0.trans_name(t).to_string();
    let tn1 = |t: usize| n1.trans_name(t).to_string();
    let pn0 = |s: usize| n0.place_name(s).to_string();
    let pn1 = |s: usize| n1.place_name(s).to_string();
    for t in 0..n0.n_transitions() {
        let Some(u) = m.ft[t] else { continue };
        // 1a
        if &m.image(n0.pre(t), p1) != n1.pre(u) || &m.image(n0.post(t), p1) != n1.post(u) {
            r.violate(
                "acn-morph-flow",
                [tn0(t), tn1(u)],
                format!("condition 1a: pre/post of {} do not map onto pre/post of {}", tn0(t), tn1(u)),
            );
        }
        // 1b
        for s in n1.inhib(u).ones() {
            let pre_s = m.preimage(s);
            let hits = pre_s.ones().filter(|&s0| n0.inhib(t).contains(s0)).count();
            let ok = if n1.place_pre(s).is_clear() {
                hits > 0
            } else {
                hits == pre_s.count_ones(..)
            };
            if !ok {
                let how = if n1.place_pre(s).is_clear() { "no preimage of {} inhibits" } else { "some preimage of {} does not inhibit" };
                r.violate(
                    "acn-morph-inhibitor-reflection",
                    [pn1(s), tn1(u), tn0(t)],
                    format!(
                        "condition 1b: ({}, {}) is not reflected: {} {}",
                        pn1(s),
                        tn1(u),
                        how.replace("{}", &pn1(s)),
                        tn0(t)
                    ),
                );
            }
        }
    }
    // 2
    for t in 0..n0.n_transitions() {
        for t2 in t + 1..n0.n_transitions() {
            if m.ft[t].is_some() && m.ft[t] == m.ft[t2] && !d0.conflict.contains(t, t2) {
                r.violate(
                    "acn-morph-identify-conflict",
                    [tn0(t), tn0(t2)],
                    format!("condition 2: {} and {} are identified but not in conflict", tn0(t), tn0(t2)),
                );
            }
        }
    }
    // 3
    let mut vacuous = false;
    for s1 in 0..p1 {
        let pre_s = m.preimage(s1).ones().collect::<Vec<_>>();
        for (i, &a) in pre_s.iter().enumerate() {
            for &b in &pre_s[i + 1..] {
                let post_ok = both_conflict(d0, n0.place_post(a), n0.place_post(b));
                let pre_ok = both_conflict(d0, n0.place_pre(a), n0.place_pre(b));
                let empty_side = [n0.place_post(a), n0.place_post(b), n0.place_pre(a), n0.place_pre(b)]
                    .iter()
                    .any(|x| x.is_clear());
                if !post_ok && !pre_ok {
                    r.violate(
                        "acn-morph-place-identification",
                        [pn0(a), pn0(b), pn1(s1)],
                        format!(
                            "condition 3: {} and {} both map to {} but neither their consumers nor their producers conflict",
                            pn0(a),
                            pn0(b),
                            pn1(s1)
                        ),
                    );
                } else if empty_side {
                    vacuous = true;
                }
            }
        }
    }
    if vacuous {
        r.note("condition 3 held for some identified places only because a producer or consumer set was empty");
    }
    // 4
    let img = m.image(n0.initial_marking(), p1);
    if &img != n1.initial_marking() {
        let mut w = n1.names_of_places(&img);
        w.push("|".into());
        w.extend(n1.names_of_places(n1.initial_marking()));
        r.violate("acn-morph-marking", w, "condition 4: the image of the initial marking differs from the target's");
    }
    for s1 in 0..p1 {
        if n1.place_pre(s1).is_clear() && m.preimage(s1).is_clear() {
            r.violate(
                "acn-morph-presetless-preimage",
                [pn1(s1)],
                format!("derived inconsistency: presetless place {} has no preimage", pn1(s1)),
            );
        }
    }
}

/// Clause evaluation for rACN-morphisms.
pub fn check_racn_morphism(v0: &Racn, v1: &Racn, f: &NetMorphism) -> ValidationReport {
    let mut r = ValidationReport::new("racn-morphism");
    r.absorb("source", validate_racn(v0));
    r.absorb("target", validate_racn(v1));
    let (n0, n1) = (v0.net(), v1.net());
    let Some(m) = resolve_net_map(n0, n1, f, &mut r) else {
        return r;
    };
    for t in 0..n0.n_transitions() {
        let Some(u) = m.ft[t] else { continue };
        if v0.is_forward(t) != v1.is_forward(u) {
            r.violate(
                "racn-morph-sorting",
                [n0.trans_name(t), n1.trans_name(u)],
                format!("{} and its image {} are not both forward or both backward", n0.trans_name(t), n1.trans_name(u)),
            );
        }
    }
    let fwd0: BTreeSet<String> = n0.names_of_transitions(v0.forward()).into_iter().collect();
    let mut sub = ValidationReport::new("acn-morphism");
    let (r0, r1) = (forward_restriction(v0), forward_restriction(v1));
    if let Some(fm) = resolve_net_map(&r0, &r1, &f.restrict_transitions(&fwd0), &mut sub) {
        if sub.passed() {
            acn_clauses(&r0, &r1, &derived_relations(&r0), &fm, &mut sub);
        }
    }
    r.absorb("forward restriction", sub);
    for b in v0.backward().ones() {
        let t = v0.reversed(b).expect("backward");
        let Some(ft) = m.ft[t] else { continue };
        let want = v1.undo_of(ft);
        if want.is_none() || m.ft[b] != want {
            r.violate(
                "racn-morph-reversal",
                [n0.trans_name(b), n0.trans_name(t)],
                format!("image of {} must be the reverse of the image of {}", n0.trans_name(b), n0.trans_name(t)),
            );
        }
    }
    for b in v0.backward().ones() {
        let Some(fb) = m.ft[b] else { continue };
        for s in n1.inhib(fb).ones() {
            let pre_s = m.preimage(s);
            let hits = pre_s.ones().filter(|&s0| n0.inhib(b).contains(s0)).count();
            let feeds_forward = !n1.place_post(s).is_disjoint(v1.forward());
            let ok = if feeds_forward {
                pre_s.is_clear() || hits > 0
            } else {
                hits == pre_s.count_ones(..)
            };
            if !ok {
                r.violate(
                    "racn-morph-backward-inhibitor",
                    [n1.place_name(s), n1.trans_name(fb), n0.trans_name(b)],
                    format!("inhibitor arc ({}, {}) is not reflected on {}", n1.place_name(s), n1.trans_name(fb), n0.trans_name(b)),
                );
            }
        }
    }
    r
}

struct EsMap {
    f: Vec<Option<usize>>,
}

fn resolve_es_map(src: &[String], dst_id: impl Fn(&str) -> Option<usize>, f: &EsMorphism, r: &mut ValidationReport) -> Option<EsMap> {
    let mut ok = true;
    let idx: BTreeMap<&str, usize> = src.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    let mut out = vec![None; src.len()];
    for (e, img) in &f.map {
        let Some(&i) = idx.get(e.as_str()) else {
            ok = false;
            r.violate("morphism-endpoints", [e.as_str()], format!("`{e}` is not a source event"));
            continue;
        };
        if let Some(img) = img {
            match dst_id(img) {
                Some(j) => out[i] = Some(j),
                None => {
                    ok = false;
                    r.violate("morphism-endpoints", [img.as_str()], format!("`{img}` is not a target event"));
                }
            }
        }
    }
    for e in src {
        if !f.map.contains_key(e) {
            ok = false;
            r.violate("morphism-endpoints", [e.as_str()], format!("event `{e}` is neither mapped nor marked undefined"));
        }
    }
    ok.then_some(EsMap { f: out })
}

fn image_set(m: &EsMap, xs: &FixedBitSet, n1: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(n1);
    for x in xs.ones() {
        if let Some(y) = m.f[x] {
            out.insert(y);
        }
    }
    out
}

fn aes_clauses(src: &Aes, dst: &Aes, m: &EsMap, r: &mut ValidationReport) {
    let n0 = src.n();
    let e0 = |i: usize| src.events()[i].clone();
    let e1 = |i: usize| dst.events()[i].clone();
    for e in 0..n0 {
        let Some(fe) = m.f[e] else { continue };
        let hist = image_set(m, &src.causation.down_closure(e), dst.n());
        let target_hist = dst.causation.down_closure(fe);
        if !target_hist.is_subset(&hist) {
            let missing: Vec<String> = target_hist.difference(&hist).map(e1).collect();
            r.violate(
                "aes-morph-history",
                std::iter::once(e0(e)).chain(missing),
                format!("the causes of {} are not covered by the image of the causes of {}", e1(fe), e0(e)),
            );
        }
    }
    for e in 0..n0 {
        for e2 in 0..n0 {
            let (Some(a), Some(b)) = (m.f[e], m.f[e2]) else { continue };
            if dst.weak.contains(a, b) && !src.weak.contains(e, e2) {
                r.violate(
                    "aes-morph-weak-reflection",
                    [e0(e), e0(e2)],
                    format!("{} ↗ {} is not reflected by {} ↗ {}", e1(a), e1(b), e0(e), e0(e2)),
                );
            }
            if e < e2 && a == b && !(src.weak.contains(e, e2) && src.weak.contains(e2, e)) {
                r.violate(
                    "aes-morph-identify-conflict",
                    [e0(e), e0(e2)],
                    format!("{} and {} are identified but not in conflict", e0(e), e0(e2)),
                );
            }
        }
    }
}

/// Clause evaluation for AES-morphisms.
pub fn check_aes_morphism(src: &Aes, dst: &Aes, f: &EsMorphism) -> ValidationReport {
    let mut r = ValidationReport::new("aes-morphism");
    r.absorb("source", validate_aes(src));
    r.absorb("target", validate_aes(dst));
    if let Some(m) = resolve_es_map(src.events(), |e| dst.event_id(e).ok(), f, &mut r) {
        aes_clauses(src, dst, &m, &mut r);
    }
    r
}

/// Clause evaluation for rAES-morphisms.
pub fn check_raes_morphism(src: &Raes, dst: &Raes, f: &EsMorphism) -> ValidationReport {
    let mut r = ValidationReport::new("raes-morphism");
    r.absorb("source", validate_raes(src));
    r.absorb("target", validate_raes(dst));
    let Some(m) = resolve_es_map(src.events(), |e| dst.event_id(e).ok(), f, &mut r) else {
        return r;
    };
    aes_clauses(&src.forward_part(), &dst.forward_part(), &m, &mut r);
    let e0 = |i: usize| src.event_name(i).to_string();
    let e1 = |i: usize| dst.event_name(i).to_string();
    for u in src.reversible.ones() {
        let Some(fu) = m.f[u] else { continue };
        if !dst.is_reversible(fu) {
            r.violate("raes-morph-reversible", [e0(u), e1(fu)], format!("{} is reversible but its image {} is not", e0(u), e1(fu)));
            continue;
        }
        let img = image_set(&m, &src.undo_history(u), dst.n());
        let want = dst.undo_history(fu);
        if !want.is_subset(&img) {
            r.violate(
                "raes-morph-undo-history",
                std::iter::once(e0(u)).chain(want.difference(&img).map(e1)),
                format!("the causes of undoing {} are not covered by the image of those of undoing {}", e1(fu), e0(u)),
            );
        }
        for e in 0..src.n() {
            let Some(fe) = m.f[e] else { continue };
            if dst.prevention.contains(fu, fe) && !src.prevention.contains(u, e) {
                r.violate(
                    "raes-morph-prevention-reflection",
                    [e0(u), e0(e)],
                    format!("undo {} ◁ {} is not reflected by undo {} ◁ {}", e1(fu), e1(fe), e0(u), e0(e)),
                );
            }
        }
    }
    r
}

/// `g ∘ f`.
pub fn compose_es(f: &EsMorphism, g: &EsMorphism) -> Result<EsMorphism> {
    let mut map = BTreeMap::new();
    for (e, img) in &f.map {
        let out = match img {
            None => None,
            Some(x) => g
                .map
                .get(x)
                .ok_or_else(|| Error::Mismatch(format!("`{x}` is in the range of the first map but not the domain of the second")))?
                .clone(),
        };
        map.insert(e.clone(), out);
    }
    Ok(EsMorphism { map })
}

/// `g ∘ f`: relational composition on places, function composition on transitions.
pub fn compose_net(f: &NetMorphism, g: &NetMorphism) -> Result<NetMorphism> {
    let mut places = BTreeSet::new();
    for (a, b) in &f.places {
        for (b2, c) in &g.places {
            if b == b2 {
                places.insert((a.clone(), c.clone()));
            }
        }
    }
    let mut transitions = BTreeMap::new();
    for (t, img) in &f.transitions {
        let out = match img {
            None => None,
            Some(x) => g
                .transitions
                .get(x)
                .ok_or_else(|| Error::Mismatch(format!("`{x}` is in the range of the first map but not the domain of the second")))?
                .clone(),
        };
        transitions.insert(t.clone(), out);
    }
    Ok(NetMorphism { places, transitions })
}

fn expect_valid(report: ValidationReport) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::invalid(report))
    }
}

/// Images of configurations are configurations, and the map is injective on each.
pub fn aes_preservation(src: &Aes, dst: &Aes, f: &EsMorphism) -> Result<ValidationReport> {
    expect_valid(check_aes_morphism(src, dst, f))?;
    let mut r = ValidationReport::new("aes-preservation");
    for x in aes_configurations(src)?.names(src) {
        let img = f.image(&x);
        let defined = x.iter().filter(|e| f.get(e).is_some()).count();
        let names: Vec<&str> = img.iter().map(String::as_str).collect();
        if img.len() != defined || !is_aes_configuration(dst, &dst.set_of(&names)?) {
            r.violate("preserve-configuration", x.iter().cloned(), "the image of this configuration is not a configuration");
        }
    }
    Ok(r)
}

/// Every reachable configuration maps injectively onto a reachable configuration.
pub fn raes_preservation(src: &Raes, dst: &Raes, f: &EsMorphism, bound: usize) -> Result<ValidationReport> {
    expect_valid(check_raes_morphism(src, dst, f))?;
    let g0 = raes_config_graph(src, false, bound)?;
    let g1 = raes_config_graph(dst, false, bound)?;
    let mut r = ValidationReport::new("raes-preservation");
    for x in &g0.nodes {
        let img = f.image(x);
        let defined = x.iter().filter(|e| f.get(e).is_some()).count();
        if img.len() != defined || !g1.nodes.contains(&img) {
            r.violate("preserve-configuration", x.iter().cloned(), "the image of this configuration is not a configuration");
        }
    }
    Ok(r)
}

/// Token-game preservation over relevant markings, along every edge of the
/// reachability graph. `relevant` is computed on the forward parts, which
/// share their places with the full nets.
///
/// `preserve-firing` is the literal statement: the image of the relevant
/// marking fires the image step into the image of the next relevant marking.
/// A step that defeats a conflicting transition removes that transition's
/// preset from the next relevant marking but not from the fired image, so the
/// literal statement already fails for identities on nets with conflicts.
/// `preserve-enabling` (the image step is enabled) and
/// `preserve-firing-relevant` (both sides agree once the target's own
/// relevant information is taken) are checked separately.
fn token_game(net: &Ipt, fwd: &Ipt, dst: &Ipt, dst_fwd: &Ipt, m: &NetMap, bound: usize, r: &mut ValidationReport) -> Result<()> {
    let d = derived_relations(fwd);
    let d1 = derived_relations(dst_fwd);
    let reach = net.reachable_markings(bound)?;
    let p1 = dst.n_places();
    let rel = |mk: &Marking| if is_coherent_with(fwd, &d, mk) { relevant_with(fwd, &d, mk) } else { mk.clone() };
    let rel1 = |mk: &Marking| relevant_with(dst_fwd, &d1, mk);
    for mk in &reach.markings {
        if !is_coherent_with(fwd, &d, mk) {
            r.violate("preserve-coherence", net.names_of_places(mk), "reachable marking is not coherent");
        }
    }
    for &(i, t, j) in &reach.edges {
        let (a, b) = (&reach.markings[i], &reach.markings[j]);
        let (fa, fb) = (m.image(&rel(a), p1), m.image(&rel(b), p1));
        let fired = match m.ft[t] {
            Some(u) if dst.enabled_single(&fa, u) => dst.fire_single(&fa, u).ok(),
            Some(_) => None,
            None => Some(fa.clone()),
        };
        let witness = || {
            let mut w = net.names_of_places(a);
            w.push(net.trans_name(t).to_string());
            w
        };
        let tn = net.trans_name(t);
        match fired {
            None => r.violate("preserve-enabling", witness(), format!("the image of {tn} is not enabled at the image marking")),
            Some(n) => {
                if n != fb {
                    r.violate("preserve-firing", witness(), format!("the firing of {tn} is not mirrored in the target"));
                }
                if rel1(&n) != rel1(&fb) {
                    r.violate(
                        "preserve-firing-relevant",
                        witness(),
                        format!("the firing of {tn} is not mirrored in the target up to relevant information"),
                    );
                }
            }
        }
    }
    Ok(())
}

pub fn acn_preservation(n0: &Ipt, n1: &Ipt, f: &NetMorphism, bound: usize) -> Result<ValidationReport> {
    expect_valid(check_acn_morphism(n0, n1, f))?;
    let mut r = ValidationReport::new("acn-preservation");
    let mut scratch = ValidationReport::new("");
    let m = resolve_net_map(n0, n1, f, &mut scratch).expect("checked");
    token_game(n0, n0, n1, n1, &m, bound, &mut r)?;
    Ok(r)
}

pub fn racn_preservation(v0: &Racn, v1: &Racn, f: &NetMorphism, bound: usize) -> Result<ValidationReport> {
    expect_valid(check_racn_morphism(v0, v1, f))?;
    let mut r = ValidationReport::new("racn-preservation");
    let mut scratch = ValidationReport::new("");
    let m = resolve_net_map(v0.net(), v1.net(), f, &mut scratch).expect("checked");
    token_game(v0.net(), &forward_restriction(v0), v1.net(), &forward_restriction(v1), &m, bound, &mut r)?;
    Ok(r)
}

/// Every partial map from `src` events to `dst` events, in a fixed order.
/// Index `k` encodes the choice for each event in base `|dst| + 1`.
pub fn all_event_maps<'a>(src: &'a [String], dst: &'a [String]) -> impl Iterator<Item = EsMorphism> + 'a {
    let base = dst.len() as u64 + 1;
    let total = base.pow(src.len() as u32);
    (0..total).map(move |k| decode_map(src, dst, k))
}

fn decode_map(src: &[String], dst: &[String], mut k: u64) -> EsMorphism {
    let base = dst.len() as u64 + 1;
    let mut map = BTreeMap::new();
    for e in src {
        let d = (k % base) as usize;
        k /= base;
        map.insert(e.clone(), d.checked_sub(1).map(|j| dst[j].clone()));
    }
    EsMorphism { map }
}

/// All rAES-morphisms `h: sum → k` with `h ∘ ι_i = f_i`, found by exhaustive
/// search over partial event maps.
pub fn mediating_raes(
    sum: &Raes,
    injections: &[EsMorphism; 2],
    k: &Raes,
    cospan: &[EsMorphism; 2],
    exec: Exec,
) -> Result<Vec<EsMorphism>> {
    let src = sum.events().to_vec();
    let dst = k.events().to_vec();
    let base = dst.len() as u64 + 1;
    let total = base
        .checked_pow(src.len() as u32)
        .filter(|&t| t <= 50_000_000)
        .ok_or(Error::BoundExceeded { bound: 50_000_000, frontier: 0 })?;
    Ok(exec.filter_map_range(total, |code| {
        let h = decode_map(&src, &dst, code);
        let commutes = (0..2).all(|i| compose_es(&injections[i], &h).map(|c| c == cospan[i]).unwrap_or(false));
        (commutes && check_raes_morphism(sum, k, &h).passed()).then_some(h)
    }))
}

/// All rACN-morphisms `h: sum → k` with `h ∘ ι_i = f_i`. The place relation
/// is the one the injections force, since every place of the sum is the image
/// of exactly one component place. Each transition ranges over `⊥` and the
/// targets of its own sort whose pre and post sets match its image; every
/// morphism lies in that product, which is searched exhaustively.
pub fn mediating_racn(
    sum: &Racn,
    injections: &[NetMorphism; 2],
    k: &Racn,
    cospan: &[NetMorphism; 2],
    exec: Exec,
) -> Result<Vec<NetMorphism>> {
    let mut places = BTreeSet::new();
    for i in 0..2 {
        for (a, tagged) in &injections[i].places {
            for (a2, img) in &cospan[i].places {
                if a == a2 {
                    places.insert((tagged.clone(), img.clone()));
                }
            }
        }
    }
    let image = |xs: &FixedBitSet| -> BTreeSet<String> {
        let names = sum.net().names_of_places(xs);
        places.iter().filter(|(a, _)| names.contains(a)).map(|(_, b)| b.clone()).collect()
    };
    let (n0, n1) = (sum.net(), k.net());
    let candidates: Vec<Vec<Option<String>>> = (0..n0.n_transitions())
        .map(|t| {
            let (pre, post) = (image(n0.pre(t)), image(n0.post(t)));
            let mut c = vec![None];
            c.extend((0..n1.n_transitions()).filter_map(|u| {
                let fits = sum.is_forward(t) == k.is_forward(u)
                    && n1.names_of_places(n1.pre(u)).into_iter().collect::<BTreeSet<_>>() == pre
                    && n1.names_of_places(n1.post(u)).into_iter().collect::<BTreeSet<_>>() == post;
                fits.then(|| Some(n1.trans_name(u).to_string()))
            }));
            c
        })
        .collect();
    let total = candidates
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .filter(|&t| t <= 50_000_000)
        .ok_or(Error::BoundExceeded { bound: 50_000_000, frontier: 0 })?;
    Ok(exec.filter_map_range(total, |mut code| {
        let mut transitions = BTreeMap::new();
        for (t, c) in candidates.iter().enumerate() {
            let d = (code % c.len() as u64) as usize;
            code /= c.len() as u64;
            transitions.insert(n0.trans_name(t).to_string(), c[d].clone());
        }
        let h = NetMorphism {
            places: places.clone(),
            transitions,
        };
        let commutes = (0..2).all(|i| compose_net(&injections[i], &h).map(|c| c == cospan[i]).unwrap_or(false));
        (commutes && check_racn_morphism(sum, k, &h).passed()).then_some(h)
    }))
}
