//! Reversible asymmetric causal nets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::acn::{conflict_inheritance_witness, derived_relations, producers_of, validate_pacn, DerivedRelations};
use crate::error::{Error, Result};
use crate::graph::{Action, Config, ConfigGraph};
use crate::net::{Ipt, NetSpec};
use crate::relation::Rel;
use crate::report::ValidationReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Racn {
    net: Ipt,
    forward: FixedBitSet,
    backward: FixedBitSet,
    /// backward transition -> the forward transition it reverses
    reverses: Vec<Option<usize>>,
}

impl Racn {
    /// `backward` maps each backward transition to the forward one it reverses.
    pub fn new(net: Ipt, backward: &BTreeMap<String, String>) -> Result<Racn> {
        let nt = net.n_transitions();
        let mut bwd = net.empty_transitions();
        let mut reverses = vec![None; nt];
        for (b, f) in backward {
            let bi = net.trans_id(b).ok_or_else(|| Error::UnknownTransition(b.clone()))?;
            let fi = net.trans_id(f).ok_or_else(|| Error::UnknownTransition(f.clone()))?;
            bwd.insert(bi);
            reverses[bi] = Some(fi);
        }
        for (b, f) in backward {
            if backward.contains_key(f) {
                return Err(Error::BackwardChain(f.clone(), b.clone()));
            }
        }
        let mut fwd = bwd.clone();
        fwd.toggle_range(..);
        Ok(Racn { net, forward: fwd, backward: bwd, reverses })
    }

    pub fn from_spec(spec: &NetSpec, backward: &BTreeMap<String, String>) -> Result<Racn> {
        Racn::new(Ipt::new(spec)?, backward)
    }

    /// An rACN without backward transitions.
    pub fn forward_only(net: Ipt) -> Racn {
        Racn::new(net, &BTreeMap::new()).expect("no backward transitions")
    }

    pub fn net(&self) -> &Ipt {
        &self.net
    }

    pub fn forward(&self) -> &FixedBitSet {
        &self.forward
    }

    pub fn backward(&self) -> &FixedBitSet {
        &self.backward
    }

    pub fn is_forward(&self, t: usize) -> bool {
        self.forward.contains(t)
    }

    /// For a backward transition, the forward transition it reverses.
    pub fn reversed(&self, b: usize) -> Option<usize> {
        self.reverses[b]
    }

    /// The (first) backward transition reversing `t`.
    pub fn undo_of(&self, t: usize) -> Option<usize> {
        self.backward.ones().find(|&b| self.reverses[b] == Some(t))
    }

    /// Backward map by name.
    pub fn backward_map(&self) -> BTreeMap<String, String> {
        self.backward
            .ones()
            .map(|b| {
                (
                    self.net.trans_name(b).to_string(),
                    self.net.trans_name(self.reverses[b].unwrap()).to_string(),
                )
            })
            .collect()
    }

    /// Names of forward transitions that have a reversing transition.
    pub fn reversible(&self) -> BTreeSet<String> {
        self.backward
            .ones()
            .map(|b| self.net.trans_name(self.reverses[b].unwrap()).to_string())
            .collect()
    }

    /// Action label of a single firing of `t`.
    pub fn action(&self, t: usize) -> Action {
        match self.reverses[t] {
            Some(f) => Action::Undo(self.net.trans_name(f).to_string()),
            None => Action::Do(self.net.trans_name(t).to_string()),
        }
    }
}

pub fn forward_restriction(v: &Racn) -> Ipt {
    v.net.restrict(&v.forward)
}

/// Relations involving backward transitions, indexed by the full transition set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackwardRelations {
    /// `(t, ū)` with `pre t ∩ inhib ū ≠ ∅`, `t` forward.
    pub rev_causation: Rel,
    /// `(ū, t)` with `post t ∩ inhib ū ≠ ∅`, `t` forward.
    pub rev_prevention: Rel,
    /// `⋘` on forward transitions.
    pub sustained: Rel,
    /// `K(ū)` for each backward `ū`.
    pub undo_causes: BTreeMap<usize, FixedBitSet>,
}

/// Forward relations computed on the full net but masked to forward transitions.
pub(crate) fn forward_relations(v: &Racn) -> DerivedRelations {
    let mut d = derived_relations(&v.net);
    let mask = |r: &Rel| {
        let mut out = Rel::new(r.size());
        for (a, b) in r.pairs() {
            if v.is_forward(a) && v.is_forward(b) {
                out.insert(a, b);
            }
        }
        out
    };
    d.lessdot = mask(&d.lessdot);
    d.prevention = mask(&d.prevention);
    d.leadsto = mask(&d.leadsto);
    d.conflict = mask(&d.conflict);
    d.lessdot_trans = d.lessdot.transitive_closure();
    d
}

fn relations_unchecked(v: &Racn, d: &DerivedRelations) -> BackwardRelations {
    let net = &v.net;
    let nt = net.n_transitions();
    let mut rev_causation = Rel::new(nt);
    let mut rev_prevention = Rel::new(nt);
    let mut undo_causes = BTreeMap::new();
    for b in v.backward.ones() {
        let mut k = net.empty_transitions();
        for t in v.forward.ones() {
            if !net.pre(t).is_disjoint(net.inhib(b)) {
                rev_causation.insert(t, b);
                k.insert(t);
            }
            if !net.post(t).is_disjoint(net.inhib(b)) {
                rev_prevention.insert(b, t);
            }
        }
        undo_causes.insert(b, k);
    }
    let mut base = Rel::new(nt);
    for (t, u) in d.lessdot.pairs() {
        let kept = match v.undo_of(t) {
            None => true,
            Some(b) => !net.inhib(b).is_disjoint(net.post(u)),
        };
        if kept {
            base.insert(t, u);
        }
    }
    BackwardRelations {
        rev_causation,
        rev_prevention,
        sustained: base.transitive_closure(),
        undo_causes,
    }
}

pub fn backward_relations(v: &Racn) -> Result<BackwardRelations> {
    let report = validate_racn(v);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    Ok(relations_unchecked(v, &forward_relations(v)))
}

pub fn validate_racn(v: &Racn) -> ValidationReport {
    let mut r = ValidationReport::new("racn");
    r.note("conflict ♮ in condition 5 is computed on the forward restriction");
    let net = &v.net;
    // (1)
    r.absorb("condition 1 (forward restriction)", validate_pacn(&forward_restriction(v)));
    // (2)
    let mut claimed: BTreeMap<usize, usize> = BTreeMap::new();
    for b in v.backward.ones() {
        let t = v.reverses[b].unwrap();
        let bn = net.trans_name(b);
        let tn = net.trans_name(t);
        let matches = |f: usize| {
            net.post(f) == net.pre(b) && net.pre(f) == net.post(b) && net.pre(f).is_subset(net.inhib(b))
        };
        if !matches(t) {
            r.violate(
                "racn-reversal-pairing",
                [bn, tn],
                format!("condition 2: {bn} does not swap the preset and postset of {tn} while being inhibited by pre {tn}"),
            );
        }
        let others: Vec<usize> = v.forward.ones().filter(|&f| f != t && matches(f)).collect();
        if !others.is_empty() {
            r.violate(
                "racn-reversal-pairing",
                [bn, net.trans_name(others[0])],
                format!("condition 2: {bn} reverses more than one forward transition"),
            );
        }
        if let Some(&b0) = claimed.get(&t) {
            r.violate(
                "racn-reversal-pairing",
                [net.trans_name(b0), bn],
                format!("condition 2: {tn} has two reversing transitions"),
            );
        }
        claimed.insert(t, b);
    }
    let d = forward_relations(v);
    let rel = relations_unchecked(v, &d);
    // (3)
    for (&b, k) in &rel.undo_causes {
        if let Some(cycle) = d.leadsto.find_cycle_within(k) {
            r.violate(
                "racn-undo-causes-acyclic",
                std::iter::once(net.trans_name(b).to_string())
                    .chain(cycle.iter().map(|&t| net.trans_name(t).to_string())),
                format!("condition 3: ⤳ has a cycle among the causes of {}", net.trans_name(b)),
            );
        }
    }
    // (4)
    for b in v.backward.ones() {
        for t in v.forward.ones() {
            if rel.rev_causation.contains(t, b) && rel.rev_prevention.contains(b, t) {
                r.violate(
                    "racn-undo-cause-not-prevent",
                    [net.trans_name(t), net.trans_name(b)],
                    format!(
                        "condition 4: {} both enables and prevents {}",
                        net.trans_name(t),
                        net.trans_name(b)
                    ),
                );
            }
        }
    }
    // (5)
    if let Some(w) = conflict_inheritance_witness(&d.conflict, &rel.sustained, &v.forward) {
        let n = |i: usize| net.trans_name(w[i]);
        r.violate(
            "racn-conflict-inheritance",
            [n(0), n(1), n(2)],
            format!(
                "condition 5: {} ♮ {} and {} ⋘ {} but not {} ♮ {}",
                n(0),
                n(1),
                n(1),
                n(2),
                n(0),
                n(2)
            ),
        );
    }
    r
}

/// Configuration graph: reachable markings under forward and backward
/// firings, each collapsed to its set of forward transitions `pre(m) ∩ forward`.
pub fn racn_configurations(v: &Racn, bound: usize) -> Result<ConfigGraph> {
    let report = validate_racn(v);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    racn_configurations_unchecked(v, bound)
}

pub(crate) fn racn_configurations_unchecked(v: &Racn, bound: usize) -> Result<ConfigGraph> {
    let net = &v.net;
    let reach = net.reachable_markings(bound)?;
    let configs: Vec<Config> = reach
        .markings
        .iter()
        .map(|m| {
            let mut x = producers_of(net, m);
            x.intersect_with(&v.forward);
            net.names_of_transitions(&x).into_iter().collect()
        })
        .collect();
    let mut owner: HashMap<&Config, usize> = HashMap::new();
    for (i, c) in configs.iter().enumerate() {
        if let Some(&j) = owner.get(c) {
            if reach.markings[j] != reach.markings[i] {
                return Err(Error::AmbiguousMarking { config: c.iter().cloned().collect() });
            }
        }
        owner.insert(c, i);
    }
    let mut g = ConfigGraph::default();
    g.nodes.extend(configs.iter().cloned());
    for &(i, t, j) in &reach.edges {
        g.edges.insert((configs[i].clone(), vec![v.action(t)], configs[j].clone()));
    }
    Ok(g)
}

/// Tagged disjoint union. Besides the arcs of each component, every place
/// produced by a forward transition of one component inhibits every
/// transition of the other, so the two components exclude each other.
pub fn racn_coproduct(v0: &Racn, v1: &Racn) -> Result<(Racn, [crate::morphism::NetMorphism; 2])> {
    for v in [v0, v1] {
        let report = validate_racn(v);
        if !report.passed() {
            return Err(Error::invalid(report));
        }
    }
    let tag = |i: usize, x: &str| format!("{i}:{x}");
    let mut spec = NetSpec::default();
    let mut backward = BTreeMap::new();
    for (i, v) in [v0, v1].into_iter().enumerate() {
        let s = v.net.to_spec();
        spec.places.extend(s.places.iter().map(|p| tag(i, p)));
        spec.transitions.extend(s.transitions.iter().map(|t| tag(i, t)));
        spec.flow.extend(s.flow.iter().map(|(x, y)| (tag(i, x), tag(i, y))));
        spec.inhibitor.extend(s.inhibitor.iter().map(|(x, y)| (tag(i, x), tag(i, y))));
        spec.marking.extend(s.marking.iter().map(|p| tag(i, p)));
        backward.extend(v.backward_map().iter().map(|(b, f)| (tag(i, b), tag(i, f))));
    }
    for (i, v) in [v0, v1].into_iter().enumerate() {
        let j = 1 - i;
        let other = if j == 0 { v0 } else { v1 };
        for f in v.forward.ones() {
            for s in v.net.post(f).ones() {
                for t in other.net.transitions() {
                    spec.inhibitor.insert((tag(i, v.net.place_name(s)), tag(j, t)));
                }
            }
        }
    }
    let sum = Racn::from_spec(&spec, &backward)?;
    let inj = |i: usize, v: &Racn| crate::morphism::NetMorphism {
        places: v.net.places().iter().map(|p| (p.clone(), tag(i, p))).collect(),
        transitions: v.net.transitions().iter().map(|t| (t.clone(), Some(tag(i, t)))).collect(),
    };
    let injections = [inj(0, v0), inj(1, v1)];
    Ok((sum, injections))
}
