//! Causal nets whose dependencies are carried by inhibitor arcs: derived
//! relations, pACN/ACN/CN validation, configurations, coherent markings and
//! the translation removing shared places.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::net::{Ipt, Marking, NetSpec};
use crate::relation::{full_set, set_from_mask, Rel};
use crate::report::ValidationReport;

/// Relations induced by the inhibitor arcs, indexed by transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedRelations {
    /// `t ⋖ t'` iff `pre t ∩ inhib t' ≠ ∅`.
    pub lessdot: Rel,
    /// `t` prevents `t'` iff `post t ∩ inhib t' ≠ ∅`.
    pub prevention: Rel,
    /// `t ⤳ t'` iff `t'` prevents `t`.
    pub leadsto: Rel,
    /// Symmetric conflict: prevention in both directions.
    pub conflict: Rel,
    pub lessdot_trans: Rel,
}

pub fn derived_relations(net: &Ipt) -> DerivedRelations {
    let n = net.n_transitions();
    let mut lessdot = Rel::new(n);
    let mut prevention = Rel::new(n);
    for t in 0..n {
        for u in 0..n {
            if !net.pre(t).is_disjoint(net.inhib(u)) {
                lessdot.insert(t, u);
            }
            if !net.post(t).is_disjoint(net.inhib(u)) {
                prevention.insert(t, u);
            }
        }
    }
    let leadsto = prevention.inverse();
    let conflict = prevention.intersection(&leadsto);
    let lessdot_trans = lessdot.transitive_closure();
    DerivedRelations {
        lessdot,
        prevention,
        leadsto,
        conflict,
        lessdot_trans,
    }
}

impl DerivedRelations {
    /// `⌊t⌋_⋖`: `t` and all its (transitive) causes.
    pub fn history(&self, t: usize) -> FixedBitSet {
        let mut h = self.lessdot_trans.column(t);
        h.insert(t);
        h
    }

    /// `⤳ ∪ ⋖`.
    pub fn order(&self) -> Rel {
        self.leadsto.union(&self.lessdot)
    }
}

fn pair(net: &Ipt, t: usize, u: usize) -> Vec<String> {
    vec![net.trans_name(t).to_string(), net.trans_name(u).to_string()]
}

fn names(net: &Ipt, ts: &[usize]) -> Vec<String> {
    ts.iter().map(|&t| net.trans_name(t).to_string()).collect()
}

/// The five pACN conditions plus the no-shared-places rule.
pub fn validate_pacn(net: &Ipt) -> ValidationReport {
    let mut r = ValidationReport::new("pacn");
    check_pacn_into(net, &mut r);
    r
}

fn check_pacn_into(net: &Ipt, r: &mut ValidationReport) {
    let nt = net.n_transitions();
    // (1)
    for t in 0..nt {
        for u in 0..nt {
            if let Some(s) = net.post(t).intersection(net.pre(u)).next() {
                r.violate(
                    "pacn-post-pre-disjoint",
                    [net.trans_name(t), net.trans_name(u), net.place_name(s)],
                    format!(
                        "condition 1: place {} is in the postset of {} and the preset of {}",
                        net.place_name(s),
                        net.trans_name(t),
                        net.trans_name(u)
                    ),
                );
            }
        }
    }
    // (2)
    for t in 0..nt {
        if net.pre(t).count_ones(..) != 1 {
            r.violate(
                "pacn-singleton-preset",
                [net.trans_name(t)],
                format!("condition 2: the preset of {} is not a singleton", net.trans_name(t)),
            );
        }
        if net.post(t).count_ones(..) != 1 {
            r.violate(
                "pacn-singleton-postset",
                [net.trans_name(t)],
                format!("condition 2: the postset of {} is not a singleton", net.trans_name(t)),
            );
        }
    }
    let mut produced = net.empty_places();
    let mut adjacent = net.empty_places();
    let mut inhibiting = net.empty_places();
    for t in 0..nt {
        produced.union_with(net.post(t));
        adjacent.union_with(net.pre(t));
        adjacent.union_with(net.post(t));
        inhibiting.union_with(net.inhib(t));
    }
    for s in 0..net.n_places() {
        let marked = net.initial_marking().contains(s);
        if marked == produced.contains(s) {
            r.violate(
                "pacn-initial-marking",
                [net.place_name(s)],
                format!(
                    "condition 2: the initial marking must be the places outside post(T), but {} {}",
                    net.place_name(s),
                    if marked { "is marked and produced" } else { "is unmarked and never produced" }
                ),
            );
        }
        if inhibiting.contains(s) && !adjacent.contains(s) {
            r.violate(
                "pacn-inhibitor-places",
                [net.place_name(s)],
                format!(
                    "condition 2: inhibitor place {} is in no preset or postset",
                    net.place_name(s)
                ),
            );
        }
    }
    // shared places
    for t in 0..nt {
        for u in t + 1..nt {
            if !net.pre(t).is_disjoint(net.pre(u)) || !net.post(t).is_disjoint(net.post(u)) {
                r.violate(
                    "pacn-no-shared-places",
                    pair(net, t, u),
                    format!("{} and {} share a place", net.trans_name(t), net.trans_name(u)),
                );
            }
        }
    }
    let d = derived_relations(net);
    // (3)
    if let Some(cycle) = d.lessdot.find_cycle() {
        r.violate(
            "pacn-lessdot-acyclic",
            names(net, &cycle),
            "condition 3: the transitive closure of ⋖ is not irreflexive (⋖ has a cycle)",
        );
    }
    // (4)
    let order = d.order();
    for t in 0..nt {
        let h = d.history(t);
        if let Some(cycle) = order.find_cycle_within(&h) {
            r.violate(
                "pacn-history-acyclic",
                std::iter::once(net.trans_name(t).to_string()).chain(names(net, &cycle)),
                format!("condition 4: ⤳ ∪ ⋖ has a cycle within the causes of {}", net.trans_name(t)),
            );
        }
    }
    // (5)
    for t in 0..nt {
        for u in 0..nt {
            if d.lessdot.contains(t, u) && d.prevention.contains(t, u) {
                r.violate(
                    "pacn-cause-not-prevent",
                    pair(net, t, u),
                    format!(
                        "condition 5: {} both causes and prevents {}",
                        net.trans_name(t),
                        net.trans_name(u)
                    ),
                );
            }
        }
    }
}

/// pACN conditions plus saturation, `⋖ ⊆ ⤳` and conflict inheritance.
pub fn validate_acn(net: &Ipt) -> ValidationReport {
    let mut r = ValidationReport::new("acn");
    check_pacn_into(net, &mut r);
    let d = derived_relations(net);
    let nt = net.n_transitions();
    for (t, u) in d.lessdot_trans.pairs() {
        if t != u && !d.lessdot.contains(t, u) {
            r.violate(
                "acn-saturated",
                pair(net, t, u),
                format!(
                    "saturation: {} ⋖⁺ {} but not {} ⋖ {}",
                    net.trans_name(t),
                    net.trans_name(u),
                    net.trans_name(t),
                    net.trans_name(u)
                ),
            );
        }
    }
    for (t, u) in d.lessdot.pairs() {
        if !d.leadsto.contains(t, u) {
            r.violate(
                "lessdot-implies-leadsto",
                pair(net, t, u),
                format!(
                    "⋖ ⊆ ⤳: {} ⋖ {} but post {} does not inhibit {}",
                    net.trans_name(t),
                    net.trans_name(u),
                    net.trans_name(u),
                    net.trans_name(t)
                ),
            );
        }
    }
    if let Some(w) = conflict_inheritance_witness(&d.conflict, &d.lessdot, &full_set(nt)) {
        r.violate(
            "acn-conflict-inheritance",
            names(net, &w),
            format!(
                "conflict inheritance: {} ♮ {} and {} ⋖ {} but not {} ♮ {}",
                net.trans_name(w[0]),
                net.trans_name(w[1]),
                net.trans_name(w[1]),
                net.trans_name(w[2]),
                net.trans_name(w[0]),
                net.trans_name(w[2])
            ),
        );
    }
    r
}

/// First triple `(t, t', t'')` with `t # t'`, `t' ≺ t''` and not `t # t''`,
/// among transitions in `within`.
pub(crate) fn conflict_inheritance_witness(conflict: &Rel, causal: &Rel, within: &FixedBitSet) -> Option<[usize; 3]> {
    for t in within.ones() {
        for u in conflict.row(t).ones().filter(|u| within.contains(*u)) {
            for v in causal.row(u).ones().filter(|v| within.contains(*v)) {
                if !conflict.contains(t, v) {
                    return Some([t, u, v]);
                }
            }
        }
    }
    None
}

/// A pACN configuration together with a linearization of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub transitions: FixedBitSet,
    pub linearization: Vec<usize>,
}

impl Configuration {
    pub fn names(&self, net: &Ipt) -> BTreeSet<String> {
        net.names_of_transitions(&self.transitions).into_iter().collect()
    }
}

/// Limit on the number of transitions for plain subset enumeration.
pub const SUBSET_LIMIT: usize = 20;

/// `X` is left closed under `⋖` and `⤳ ∪ ⋖` is acyclic on it.
pub fn is_pacn_configuration(d: &DerivedRelations, x: &FixedBitSet) -> bool {
    x.ones().all(|t| d.lessdot.column(t).is_subset(x)) && d.order().is_acyclic_within(x)
}

fn config_of(d: &DerivedRelations, order: &Rel, x: FixedBitSet) -> Option<Configuration> {
    let closed = x.ones().all(|t| d.lessdot.column(t).is_subset(&x));
    if !closed {
        return None;
    }
    let linearization = order.topo_order_within(&x)?;
    Some(Configuration { transitions: x, linearization })
}

pub fn pacn_configurations(net: &Ipt) -> Result<Vec<Configuration>> {
    pacn_configurations_with(net, Exec::default())
}

/// Configurations in a canonical order (by size, then by sorted index list).
pub fn pacn_configurations_with(net: &Ipt, exec: Exec) -> Result<Vec<Configuration>> {
    let report = validate_pacn(net);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    let mut out = if net.n_transitions() <= SUBSET_LIMIT {
        configurations_by_subsets(net, exec)
    } else {
        configurations_by_extension(net)
    };
    out.sort_by_key(config_key);
    Ok(out)
}

fn config_key(c: &Configuration) -> (usize, Vec<usize>) {
    (c.transitions.count_ones(..), c.transitions.ones().collect())
}

/// Every subset of transitions, tested against both clauses.
pub fn configurations_by_subsets(net: &Ipt, exec: Exec) -> Vec<Configuration> {
    let nt = net.n_transitions();
    assert!(nt < 64, "subset enumeration needs fewer than 64 transitions");
    let d = derived_relations(net);
    let order = d.order();
    exec.filter_map_range(1u64 << nt, |mask| config_of(&d, &order, set_from_mask(nt, mask)))
}

/// Grows configurations one transition at a time from the empty one. Every
/// configuration minus a maximal element of its linearization is again a
/// configuration, so this reaches all of them.
pub fn configurations_by_extension(net: &Ipt) -> Vec<Configuration> {
    let d = derived_relations(net);
    let order = d.order();
    let nt = net.n_transitions();
    let empty = net.empty_transitions();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([vec![]]);
    let mut out = vec![Configuration { transitions: empty.clone(), linearization: vec![] }];
    let mut i = 0;
    while i < out.len() {
        let x = out[i].transitions.clone();
        for t in (0..nt).filter(|t| !x.contains(*t)) {
            let mut y = x.clone();
            y.insert(t);
            let key: Vec<usize> = y.ones().collect();
            if seen.contains(&key) {
                continue;
            }
            if let Some(c) = config_of(&d, &order, y) {
                seen.insert(key);
                out.push(c);
            }
        }
        i += 1;
    }
    out
}

/// `pre(m)`: the transitions whose postset meets `m`.
pub fn producers_of(net: &Ipt, m: &Marking) -> FixedBitSet {
    let mut x = net.empty_transitions();
    for s in m.ones() {
        x.union_with(net.place_pre(s));
    }
    x
}

/// `m - pre X + post X` for a set of transitions.
pub fn marking_after(net: &Ipt, x: &FixedBitSet) -> Marking {
    let mut m = net.initial_marking().clone();
    for t in x.ones() {
        m.difference_with(net.pre(t));
    }
    for t in x.ones() {
        m.union_with(net.post(t));
    }
    m
}

/// Coherence: `pre t` marked iff `post t` unmarked, and no two conflicting
/// transitions both have their postsets marked.
pub fn is_coherent(net: &Ipt, m: &Marking) -> bool {
    let d = derived_relations(net);
    is_coherent_with(net, &d, m)
}

pub(crate) fn is_coherent_with(net: &Ipt, d: &DerivedRelations, m: &Marking) -> bool {
    let nt = net.n_transitions();
    let fired = |t: usize| net.post(t).is_subset(m) && !net.post(t).is_clear();
    for t in 0..nt {
        if net.pre(t).is_subset(m) == net.post(t).is_subset(m) {
            return false;
        }
    }
    for (t, u) in d.conflict.pairs() {
        if fired(t) && fired(u) {
            return false;
        }
    }
    true
}

/// The relevant information of a coherent marking: drops the preset tokens of
/// transitions that lost a conflict to a fired transition.
pub fn relevant_marking(net: &Ipt, m: &Marking) -> Result<Marking> {
    let d = derived_relations(net);
    if !is_coherent_with(net, &d, m) {
        let mut r = ValidationReport::new("coherent-marking");
        r.violate("coherent", net.names_of_places(m), "the marking is not coherent");
        return Err(Error::invalid(r));
    }
    Ok(relevant_with(net, &d, m))
}

pub(crate) fn relevant_with(net: &Ipt, d: &DerivedRelations, m: &Marking) -> Marking {
    let mut out = m.clone();
    for (t, u) in d.conflict.pairs() {
        if !net.post(u).is_disjoint(m) {
            for s in net.pre(t).intersection(m) {
                out.set(s, false);
            }
        }
    }
    out
}

/// Conflict used for CNs: inhibitor symmetric conflict plus distinct
/// transitions sharing an input place.
pub fn cn_conflict(net: &Ipt) -> Rel {
    let d = derived_relations(net);
    let mut c = d.conflict;
    let nt = net.n_transitions();
    for t in 0..nt {
        for u in 0..nt {
            if t != u && !net.pre(t).is_disjoint(net.pre(u)) {
                c.insert(t, u);
            }
        }
    }
    c
}

/// The eight conditions of a causal net.
pub fn validate_cn(net: &Ipt) -> ValidationReport {
    let mut r = ValidationReport::new("cn");
    r.note("♮ for CNs is the inhibitor symmetric conflict together with pairs of distinct transitions sharing a preset place");
    let nt = net.n_transitions();
    let d = derived_relations(net);
    let conflict = cn_conflict(net);
    // (1)
    for t in 0..nt {
        for u in 0..nt {
            if let Some(s) = net.post(t).intersection(net.pre(u)).next() {
                r.violate(
                    "cn-post-pre-disjoint",
                    [net.trans_name(t), net.trans_name(u), net.place_name(s)],
                    format!(
                        "condition 1: place {} is produced by {} and consumed by {}",
                        net.place_name(s),
                        net.trans_name(t),
                        net.trans_name(u)
                    ),
                );
            }
        }
    }
    // (2)
    for s in 0..net.n_places() {
        if net.place_pre(s).count_ones(..) > 1 {
            r.violate(
                "cn-post-is-set",
                std::iter::once(net.place_name(s).to_string())
                    .chain(net.names_of_transitions(net.place_pre(s))),
                format!("condition 2: place {} is produced by more than one transition", net.place_name(s)),
            );
        }
    }
    // (3)
    let mut inhibiting = net.empty_places();
    for t in 0..nt {
        inhibiting.union_with(net.inhib(t));
    }
    for t in 0..nt {
        for u in t + 1..nt {
            let mut shared = net.pre(t).clone();
            shared.intersect_with(net.pre(u));
            shared.intersect_with(&inhibiting);
            if let Some(s) = shared.ones().next() {
                r.violate(
                    "cn-shared-preset-not-inhibiting",
                    [net.trans_name(t), net.trans_name(u), net.place_name(s)],
                    format!(
                        "condition 3: place {} is shared by {} and {} and is an inhibitor place",
                        net.place_name(s),
                        net.trans_name(t),
                        net.trans_name(u)
                    ),
                );
            }
        }
    }
    // (4) holds for finite nets.
    // (5)
    if let Some(cycle) = d.lessdot.find_cycle() {
        r.violate(
            "cn-lessdot-order",
            names(net, &cycle),
            "condition 5: ⋖ is not irreflexive and acyclic",
        );
    }
    for (t, u) in d.lessdot_trans.pairs() {
        if t != u && !d.lessdot.contains(t, u) {
            r.violate(
                "cn-lessdot-order",
                pair(net, t, u),
                format!("condition 5: ⋖ is not transitive ({} ⋖⁺ {})", net.trans_name(t), net.trans_name(u)),
            );
        }
    }
    // (6)
    for t in 0..nt {
        let h = d.history(t);
        for u in h.ones() {
            if let Some(v) = conflict.row(u).ones().find(|v| h.contains(*v) && *v > u) {
                r.violate(
                    "cn-history-conflict-free",
                    [net.trans_name(t), net.trans_name(u), net.trans_name(v)],
                    format!(
                        "condition 6: {} ♮ {} inside the causes of {}",
                        net.trans_name(u),
                        net.trans_name(v),
                        net.trans_name(t)
                    ),
                );
            }
        }
    }
    // (7)
    if let Some(w) = conflict_inheritance_witness(&conflict, &d.lessdot, &full_set(nt)) {
        r.violate(
            "cn-conflict-inheritance",
            names(net, &w),
            format!(
                "condition 7: {} ♮ {} and {} ⋖ {} but not {} ♮ {}",
                net.trans_name(w[0]),
                net.trans_name(w[1]),
                net.trans_name(w[1]),
                net.trans_name(w[2]),
                net.trans_name(w[0]),
                net.trans_name(w[2])
            ),
        );
    }
    // (8)
    let mut pre_t = net.empty_places();
    for t in 0..nt {
        pre_t.union_with(net.pre(t));
    }
    if &pre_t != net.initial_marking() {
        let mut diff = pre_t.clone();
        diff.symmetric_difference_with(net.initial_marking());
        r.violate(
            "cn-initial-marking",
            net.names_of_places(&diff),
            "condition 8: the initial marking must equal pre(T)",
        );
    }
    if !inhibiting.is_subset(net.initial_marking()) {
        let mut diff = inhibiting.clone();
        diff.difference_with(net.initial_marking());
        r.violate(
            "cn-inhibitors-marked",
            net.names_of_places(&diff),
            "condition 8: inhibitor places must be initially marked",
        );
    }
    r
}

/// Removes shared input places, turning the choice they encode into symmetric
/// inhibitor conflicts, and completes every `t ⋖ t'` with the arc
/// `(post t', t)` so that the result is an ACN.
pub fn cn_to_acn(net: &Ipt) -> Result<Ipt> {
    let report = validate_cn(net);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    let nt = net.n_transitions();
    let shared: BTreeSet<usize> = (0..net.n_places())
        .filter(|&s| net.place_post(s).count_ones(..) > 1)
        .collect();
    let keep = |s: usize| !shared.contains(&s);
    let mut spec = NetSpec {
        places: (0..net.n_places()).filter(|&s| keep(s)).map(|s| net.place_name(s).to_string()).collect(),
        transitions: net.transitions().iter().cloned().collect(),
        ..NetSpec::default()
    };
    for s in net.initial_marking().ones().filter(|&s| keep(s)) {
        spec.marking.insert(net.place_name(s).to_string());
    }
    let arc = |s: usize, t: usize| (net.place_name(s).to_string(), net.trans_name(t).to_string());
    for t in 0..nt {
        for s in net.pre(t).ones().filter(|&s| keep(s)) {
            spec.flow.insert(arc(s, t));
        }
        for s in net.post(t).ones().filter(|&s| keep(s)) {
            spec.flow.insert((net.trans_name(t).to_string(), net.place_name(s).to_string()));
        }
        for s in net.inhib(t).ones().filter(|&s| keep(s)) {
            spec.inhibitor.insert(arc(s, t));
        }
    }
    for &s in &shared {
        let consumers: Vec<usize> = net.place_post(s).ones().collect();
        for &t in &consumers {
            for &u in &consumers {
                if t != u {
                    for p in net.post(t).ones().filter(|&p| keep(p)) {
                        spec.inhibitor.insert(arc(p, u));
                    }
                }
            }
        }
    }
    let d = derived_relations(net);
    for (t, u) in d.lessdot.pairs() {
        for p in net.post(u).ones().filter(|&p| keep(p)) {
            spec.inhibitor.insert(arc(p, t));
        }
    }
    let out = Ipt::new(&spec)?;
    let report = validate_acn(&out);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    Ok(out)
}
