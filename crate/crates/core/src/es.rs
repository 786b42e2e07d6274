//! Asymmetric event structures, their reversible extension, configurations
//! and the merged-relation presentation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::acn::conflict_inheritance_witness;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Action, Config, ConfigGraph};
use crate::relation::{full_set, set_from_mask, Rel};
use crate::report::ValidationReport;

pub type Pairs = BTreeSet<(String, String)>;

/// Name-level description of an (r)AES. `rev_causation` holds `(e, u)` for
/// `e ≺ ū`; `prevention` holds `(u, e)` for `ū ◁ e`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EsSpec {
    pub events: BTreeSet<String>,
    pub reversible: BTreeSet<String>,
    pub causation: Pairs,
    pub weak_causality: Pairs,
    pub rev_causation: Pairs,
    pub prevention: Pairs,
}

fn pairs(v: &[(&str, &str)]) -> Pairs {
    v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

impl EsSpec {
    pub fn build(
        events: &[&str],
        reversible: &[&str],
        causation: &[(&str, &str)],
        weak_causality: &[(&str, &str)],
        rev_causation: &[(&str, &str)],
        prevention: &[(&str, &str)],
    ) -> Self {
        EsSpec {
            events: events.iter().map(|s| s.to_string()).collect(),
            reversible: reversible.iter().map(|s| s.to_string()).collect(),
            causation: pairs(causation),
            weak_causality: pairs(weak_causality),
            rev_causation: pairs(rev_causation),
            prevention: pairs(prevention),
        }
    }
}

/// Event universe shared by both structure kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Events {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl Events {
    fn new(names: &BTreeSet<String>) -> Self {
        let names: Vec<String> = names.iter().cloned().collect();
        let index = names.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Events { names, index }
    }

    fn id(&self, e: &str) -> Result<usize> {
        self.index.get(e).copied().ok_or_else(|| Error::UnknownEvent(e.to_string()))
    }

    fn rel(&self, ps: &Pairs) -> Result<Rel> {
        let mut r = Rel::new(self.names.len());
        for (a, b) in ps {
            r.insert(self.id(a)?, self.id(b)?);
        }
        Ok(r)
    }

    fn pairs(&self, r: &Rel) -> Pairs {
        r.pairs()
            .into_iter()
            .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect()
    }

    fn set_names(&self, s: &FixedBitSet) -> Config {
        s.ones().map(|i| self.names[i].clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aes {
    ev: Events,
    pub causation: Rel,
    pub weak: Rel,
}

impl Aes {
    pub fn new(events: &BTreeSet<String>, causation: &Pairs, weak: &Pairs) -> Result<Aes> {
        let ev = Events::new(events);
        Ok(Aes {
            causation: ev.rel(causation)?,
            weak: ev.rel(weak)?,
            ev,
        })
    }

    pub fn from_spec(spec: &EsSpec) -> Result<Aes> {
        Aes::new(&spec.events, &spec.causation, &spec.weak_causality)
    }

    pub fn to_spec(&self) -> EsSpec {
        EsSpec {
            events: self.ev.names.iter().cloned().collect(),
            causation: self.ev.pairs(&self.causation),
            weak_causality: self.ev.pairs(&self.weak),
            ..EsSpec::default()
        }
    }

    pub fn events(&self) -> &[String] {
        &self.ev.names
    }

    pub fn n(&self) -> usize {
        self.ev.names.len()
    }

    pub fn event_id(&self, e: &str) -> Result<usize> {
        self.ev.id(e)
    }

    pub fn conflict(&self) -> Rel {
        self.weak.intersection(&self.weak.inverse())
    }

    pub fn set_names(&self, s: &FixedBitSet) -> Config {
        self.ev.set_names(s)
    }

    pub fn set_of(&self, names: &[&str]) -> Result<FixedBitSet> {
        let mut s = FixedBitSet::with_capacity(self.n());
        for e in names {
            s.insert(self.ev.id(e)?);
        }
        Ok(s)
    }
}

fn ev_names(ev: &Events, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&i| ev.names[i].clone()).collect()
}

/// AES axioms: `<` an irreflexive partial order, `< ⊆ ↗`, `↗` acyclic on
/// every history, conflict inherited along `<`.
pub fn validate_aes(g: &Aes) -> ValidationReport {
    let mut r = ValidationReport::new("aes");
    check_aes_into(&g.ev, &g.causation, &g.weak, &mut r);
    r
}

fn check_aes_into(ev: &Events, lt: &Rel, weak: &Rel, r: &mut ValidationReport) {
    let n = ev.names.len();
    let name = |i: usize| ev.names[i].as_str();
    for e in 0..n {
        if lt.contains(e, e) {
            r.violate("aes-causation-irreflexive", [name(e)], format!("< is not irreflexive at {}", name(e)));
        }
    }
    if let Some(cycle) = lt.find_cycle() {
        if cycle.len() > 1 {
            r.violate("aes-causation-acyclic", ev_names(ev, &cycle), "< has a cycle");
        }
    }
    let closure = lt.transitive_closure();
    for (a, b) in closure.pairs() {
        if a != b && !lt.contains(a, b) {
            r.violate(
                "aes-causation-transitive",
                [name(a), name(b)],
                format!("< is not transitive: {} <⁺ {} is missing", name(a), name(b)),
            );
        }
    }
    for (a, b) in lt.pairs() {
        if !weak.contains(a, b) {
            r.violate(
                "aes-causation-implies-weak",
                [name(a), name(b)],
                format!("e < e' ⇒ e ↗ e' fails: {} < {} but not {} ↗ {}", name(a), name(b), name(a), name(b)),
            );
        }
    }
    for e in 0..n {
        let h = closure.column(e).union(&crate::relation::set_of(n, [e])).collect();
        if let Some(cycle) = weak.find_cycle_within(&h) {
            r.violate(
                "aes-weak-acyclic-history",
                std::iter::once(name(e).to_string()).chain(ev_names(ev, &cycle)),
                format!("↗ has a cycle within the causes of {}", name(e)),
            );
        }
    }
    let conflict = weak.intersection(&weak.inverse());
    if let Some(w) = conflict_inheritance_witness(&conflict, lt, &full_set(n)) {
        r.violate(
            "aes-conflict-inheritance",
            ev_names(ev, &w),
            format!(
                "conflict inheritance fails: {} # {} and {} < {} but not {} # {}",
                name(w[0]),
                name(w[1]),
                name(w[1]),
                name(w[2]),
                name(w[0]),
                name(w[2])
            ),
        );
    }
}

/// `↗` acyclic on `X` and `X` left closed under `<`.
pub fn is_aes_configuration(g: &Aes, x: &FixedBitSet) -> bool {
    g.weak.is_acyclic_within(x) && x.ones().all(|e| g.causation.column(e).is_subset(x))
}

/// `Y` extends `X`: `X ⊆ Y` and nothing added weakly causes an old event.
pub fn extends(g: &Aes, x: &FixedBitSet, y: &FixedBitSet) -> bool {
    x.is_subset(y) && y.difference(x).all(|e2| x.ones().all(|e| !g.weak.contains(e2, e)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AesConfigurations {
    /// Configurations ordered by size, then by sorted index list.
    pub configs: Vec<FixedBitSet>,
    /// One-event extensions `(i, j)`: `configs[j]` extends `configs[i]` by one event.
    pub extends: Vec<(usize, usize)>,
    pub reachable: Vec<bool>,
}

impl AesConfigurations {
    pub fn names(&self, g: &Aes) -> Vec<Config> {
        self.configs.iter().map(|c| g.set_names(c)).collect()
    }
}

pub fn aes_configurations(g: &Aes) -> Result<AesConfigurations> {
    aes_configurations_with(g, Exec::default())
}

pub fn aes_configurations_with(g: &Aes, exec: Exec) -> Result<AesConfigurations> {
    let report = validate_aes(g);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    let n = g.n();
    assert!(n < 64, "subset enumeration needs fewer than 64 events");
    let mut configs = exec.filter_map_range(1u64 << n, |mask| {
        let x = set_from_mask(n, mask);
        is_aes_configuration(g, &x).then_some(x)
    });
    configs.sort_by_key(|c| (c.count_ones(..), c.ones().collect::<Vec<_>>()));
    let index: BTreeMap<Vec<usize>, usize> =
        configs.iter().enumerate().map(|(i, c)| (c.ones().collect(), i)).collect();
    let mut ext = Vec::new();
    for (i, x) in configs.iter().enumerate() {
        for e in (0..n).filter(|e| !x.contains(*e)) {
            let mut y = x.clone();
            y.insert(e);
            if let Some(&j) = index.get(&y.ones().collect::<Vec<_>>()) {
                if extends(g, x, &y) {
                    ext.push((i, j));
                }
            }
        }
    }
    let mut reachable = vec![false; configs.len()];
    reachable[0] = true;
    // configs are sorted by size, so one pass in order settles reachability
    for &(i, j) in &ext {
        if reachable[i] {
            reachable[j] = true;
        }
    }
    Ok(AesConfigurations { configs, extends: ext, reachable })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Raes {
    ev: Events,
    pub reversible: FixedBitSet,
    pub causation: Rel,
    pub weak: Rel,
    /// `(e, u)` for `e ≺ ū`.
    pub rev_causation: Rel,
    /// `(u, e)` for `ū ◁ e`.
    pub prevention: Rel,
}

impl Raes {
    pub fn from_spec(spec: &EsSpec) -> Result<Raes> {
        let ev = Events::new(&spec.events);
        let mut reversible = FixedBitSet::with_capacity(ev.names.len());
        for u in &spec.reversible {
            reversible.insert(ev.id(u)?);
        }
        let rev = |u: &str| -> Result<usize> {
            let i = ev.id(u)?;
            if reversible.contains(i) {
                Ok(i)
            } else {
                Err(Error::NotReversible(u.to_string()))
            }
        };
        let n = ev.names.len();
        let mut rev_causation = Rel::new(n);
        for (e, u) in &spec.rev_causation {
            rev_causation.insert(ev.id(e)?, rev(u)?);
        }
        let mut prevention = Rel::new(n);
        for (u, e) in &spec.prevention {
            prevention.insert(rev(u)?, ev.id(e)?);
        }
        Ok(Raes {
            causation: ev.rel(&spec.causation)?,
            weak: ev.rel(&spec.weak_causality)?,
            rev_causation,
            prevention,
            reversible,
            ev,
        })
    }

    pub fn to_spec(&self) -> EsSpec {
        EsSpec {
            events: self.ev.names.iter().cloned().collect(),
            reversible: self.ev.set_names(&self.reversible),
            causation: self.ev.pairs(&self.causation),
            weak_causality: self.ev.pairs(&self.weak),
            rev_causation: self.ev.pairs(&self.rev_causation),
            prevention: self.ev.pairs(&self.prevention),
        }
    }

    /// An AES seen as an rAES with no reversible events.
    pub fn from_aes(g: &Aes) -> Raes {
        Raes::from_spec(&g.to_spec()).expect("aes spec is well formed")
    }

    pub fn events(&self) -> &[String] {
        &self.ev.names
    }

    pub fn n(&self) -> usize {
        self.ev.names.len()
    }

    pub fn event_id(&self, e: &str) -> Result<usize> {
        self.ev.id(e)
    }

    pub fn event_name(&self, e: usize) -> &str {
        &self.ev.names[e]
    }

    pub fn is_reversible(&self, e: usize) -> bool {
        self.reversible.contains(e)
    }

    pub fn set_names(&self, s: &FixedBitSet) -> Config {
        self.ev.set_names(s)
    }

    pub fn set_of(&self, names: &[&str]) -> Result<FixedBitSet> {
        let mut s = FixedBitSet::with_capacity(self.n());
        for e in names {
            s.insert(self.ev.id(e)?);
        }
        Ok(s)
    }

    /// `(E, <, ↗)`, which need not be an AES.
    pub fn forward_part(&self) -> Aes {
        Aes {
            ev: self.ev.clone(),
            causation: self.causation.clone(),
            weak: self.weak.clone(),
        }
    }

    /// `(E, ≪, ↗)`.
    pub fn sustained_aes(&self) -> Aes {
        Aes {
            ev: self.ev.clone(),
            causation: sustained_causation(self),
            weak: self.weak.clone(),
        }
    }

    pub fn conflict(&self) -> Rel {
        self.weak.intersection(&self.weak.inverse())
    }

    /// `⌊ū⌋_≺`.
    pub fn undo_history(&self, u: usize) -> FixedBitSet {
        self.rev_causation.column(u)
    }

    pub fn pair_names(&self, r: &Rel) -> Pairs {
        self.ev.pairs(r)
    }
}

/// `≪ = < ∩ {(e, e') : e ∉ U or ē ◁ e'}`.
pub fn sustained_causation(h: &Raes) -> Rel {
    let mut s = Rel::new(h.n());
    for (e, e2) in h.causation.pairs() {
        if !h.is_reversible(e) || h.prevention.contains(e, e2) {
            s.insert(e, e2);
        }
    }
    s
}

pub fn validate_raes(h: &Raes) -> ValidationReport {
    let mut r = ValidationReport::new("raes");
    let ev = &h.ev;
    let n = h.n();
    let name = |i: usize| ev.names[i].as_str();
    let both = h.weak.union(&h.causation);
    // (3)
    for e in 0..n {
        if h.causation.contains(e, e) {
            r.violate("raes-causation-irreflexive", [name(e)], format!("condition 3: < is not irreflexive at {}", name(e)));
        }
    }
    for e in 0..n {
        let h_e = h.causation.down_closure(e);
        if let Some(cycle) = both.find_cycle_within(&h_e) {
            r.violate(
                "raes-history-acyclic",
                std::iter::once(name(e).to_string()).chain(ev_names(ev, &cycle)),
                format!("condition 3: ↗ ∪ < has a cycle within the causes of {}", name(e)),
            );
        }
    }
    // (4a), (4b)
    for u in h.reversible.ones() {
        if !h.rev_causation.contains(u, u) {
            r.violate(
                "raes-undo-self-cause",
                [name(u)],
                format!("condition 4a: for all u ∈ U, u ≺ ū; missing for {}", name(u)),
            );
        }
        if let Some(cycle) = both.find_cycle_within(&h.undo_history(u)) {
            r.violate(
                "raes-undo-history-acyclic",
                std::iter::once(name(u).to_string()).chain(ev_names(ev, &cycle)),
                format!("condition 4b: ↗ ∪ < has a cycle within the causes of undoing {}", name(u)),
            );
        }
    }
    // (5)
    for (e, u) in h.rev_causation.pairs() {
        if h.prevention.contains(u, e) {
            r.violate(
                "raes-cause-not-prevent",
                [name(e), name(u)],
                format!("condition 5: {} ≺ undo {} and undo {} ◁ {}", name(e), name(u), name(u), name(e)),
            );
        }
    }
    // (6)
    let mut sub = ValidationReport::new("aes");
    check_aes_into(ev, &sustained_causation(h), &h.weak, &mut sub);
    r.absorb("condition 6 ((E, ≪, ↗) must be an AES)", sub);
    if !h.causation.is_subset(&h.weak) {
        let (a, b) = h.causation.difference(&h.weak).pairs()[0];
        r.note(format!(
            "< is not contained in ↗ (e.g. {} < {}); only ≪ ⊆ ↗ is required",
            name(a),
            name(b)
        ));
    }
    r
}

/// Enabling of `A ∪ undo(B)` at `X`.
pub fn raes_enabled(h: &Raes, x: &FixedBitSet, a: &FixedBitSet, b: &FixedBitSet) -> bool {
    if !a.is_disjoint(x) || !b.is_subset(x) || !b.is_subset(&h.reversible) {
        return false;
    }
    let xa = x.union(a).collect::<FixedBitSet>();
    let xa = grow(xa, h.n());
    if !h.weak.is_acyclic_within(&xa) {
        return false;
    }
    let x_minus_b = grow(x.difference(b).collect(), h.n());
    for e in a.ones() {
        if !h.causation.column(e).is_subset(&x_minus_b) {
            return false;
        }
        if !h.weak.row(e).is_disjoint(&xa) {
            return false;
        }
    }
    for u in b.ones() {
        let mut allowed = x_minus_b.clone();
        allowed.insert(u);
        if !h.undo_history(u).is_subset(&allowed) {
            return false;
        }
        if !h.prevention.row(u).is_disjoint(&xa) {
            return false;
        }
    }
    true
}

fn grow(mut s: FixedBitSet, n: usize) -> FixedBitSet {
    s.grow(n);
    s
}

/// Named wrapper around [`raes_enabled`].
pub fn raes_enabled_named(h: &Raes, x: &[&str], a: &[&str], b: &[&str]) -> Result<bool> {
    Ok(raes_enabled(h, &h.set_of(x)?, &h.set_of(a)?, &h.set_of(b)?))
}

fn label(h: &Raes, a: &FixedBitSet, b: &FixedBitSet) -> Vec<Action> {
    let mut l: Vec<Action> = a
        .ones()
        .map(|e| Action::Do(h.event_name(e).to_string()))
        .chain(b.ones().map(|u| Action::Undo(h.event_name(u).to_string())))
        .collect();
    l.sort();
    l
}

/// Closure of enabled steps from `∅`. Single-event steps by default; with
/// `mixed_steps` every nonempty `A ∪ undo(B)` is tried.
pub fn raes_config_graph(h: &Raes, mixed_steps: bool, bound: usize) -> Result<ConfigGraph> {
    let report = validate_raes(h);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    raes_config_graph_unchecked(h, mixed_steps, bound)
}

pub(crate) fn raes_config_graph_unchecked(h: &Raes, mixed_steps: bool, bound: usize) -> Result<ConfigGraph> {
    let n = h.n();
    let empty = FixedBitSet::with_capacity(n);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([vec![]]);
    let mut queue = VecDeque::from([empty.clone()]);
    let mut g = ConfigGraph::default();
    g.nodes.insert(Config::new());
    while let Some(x) = queue.pop_front() {
        for (a, b) in candidate_steps(h, &x, mixed_steps) {
            if !raes_enabled(h, &x, &a, &b) {
                continue;
            }
            let mut y = grow(x.difference(&b).collect(), n);
            y.union_with(&a);
            let key: Vec<usize> = y.ones().collect();
            g.edges.insert((h.set_names(&x), label(h, &a, &b), h.set_names(&y)));
            if seen.insert(key) {
                if seen.len() > bound {
                    return Err(Error::BoundExceeded { bound, frontier: queue.len() + 1 });
                }
                g.nodes.insert(h.set_names(&y));
                queue.push_back(y);
            }
        }
    }
    Ok(g)
}

fn candidate_steps(h: &Raes, x: &FixedBitSet, mixed: bool) -> Vec<(FixedBitSet, FixedBitSet)> {
    let n = h.n();
    let empty = FixedBitSet::with_capacity(n);
    let addable: Vec<usize> = (0..n).filter(|e| !x.contains(*e)).collect();
    let undoable: Vec<usize> = x.ones().filter(|&u| h.is_reversible(u)).collect();
    if !mixed {
        let mut out = Vec::new();
        for &e in &addable {
            out.push((crate::relation::set_of(n, [e]), empty.clone()));
        }
        for &u in &undoable {
            out.push((empty.clone(), crate::relation::set_of(n, [u])));
        }
        return out;
    }
    let k = addable.len() + undoable.len();
    assert!(k < 32, "mixed steps explored only for small structures");
    (1u64..1 << k)
        .map(|mask| {
            let mut a = empty.clone();
            let mut b = empty.clone();
            for (i, &e) in addable.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.insert(e);
                }
            }
            for (i, &u) in undoable.iter().enumerate() {
                if mask >> (addable.len() + i) & 1 == 1 {
                    b.insert(u);
                }
            }
            (a, b)
        })
        .collect()
}

/// Tagged union with every cross-component pair in weak causality and prevention.
pub fn raes_coproduct(h0: &Raes, h1: &Raes) -> Result<(Raes, [crate::morphism::EsMorphism; 2])> {
    for h in [h0, h1] {
        let report = validate_raes(h);
        if !report.passed() {
            return Err(Error::invalid(report));
        }
    }
    let tag = |i: usize, x: &str| format!("{i}:{x}");
    let tag2 = |i: usize, ps: &Pairs| -> Pairs { ps.iter().map(|(a, b)| (tag(i, a), tag(i, b))).collect() };
    let mut spec = EsSpec::default();
    let specs = [h0.to_spec(), h1.to_spec()];
    for (i, s) in specs.iter().enumerate() {
        spec.events.extend(s.events.iter().map(|e| tag(i, e)));
        spec.reversible.extend(s.reversible.iter().map(|e| tag(i, e)));
        spec.causation.extend(tag2(i, &s.causation));
        spec.weak_causality.extend(tag2(i, &s.weak_causality));
        spec.rev_causation.extend(tag2(i, &s.rev_causation));
        spec.prevention.extend(tag2(i, &s.prevention));
    }
    for i in 0..2 {
        let j = 1 - i;
        for e in &specs[i].events {
            for e2 in &specs[j].events {
                spec.weak_causality.insert((tag(i, e), tag(j, e2)));
            }
        }
        for u in &specs[i].reversible {
            for e2 in &specs[j].events {
                spec.prevention.insert((tag(i, u), tag(j, e2)));
            }
        }
    }
    let sum = Raes::from_spec(&spec)?;
    let inj = |i: usize| crate::morphism::EsMorphism {
        map: specs[i].events.iter().map(|e| (e.clone(), Some(tag(i, e)))).collect(),
    };
    Ok((sum, [inj(0), inj(1)]))
}

/// Closes `<` transitively, adds `e ↗ e'` for every sustained pair, and
/// inherits conflicts along `≪` until nothing changes. The result must
/// validate as an rAES.
pub fn saturate(h: &Raes) -> Result<Raes> {
    let mut out = h.clone();
    out.causation = out.causation.transitive_closure();
    let sustained = sustained_causation(&out);
    out.weak = out.weak.union(&sustained);
    loop {
        let conflict = out.conflict();
        let mut changed = false;
        for (e, e1) in conflict.pairs() {
            for e2 in sustained.row(e1).ones() {
                if !conflict.contains(e, e2) {
                    out.weak.insert(e, e2);
                    out.weak.insert(e2, e);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let report = validate_raes(&out);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    Ok(out)
}

/// Target of merged causation / source of merged precedence: an event or an undoing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Event(String),
    Undo(String),
}

/// Merged presentation: `≺ ⊆ E × (E ∪ Ū)`, `◁ ⊆ (E ∪ Ū) × E`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sraes {
    pub events: BTreeSet<String>,
    pub reversible: BTreeSet<String>,
    pub causation: BTreeSet<(String, Target)>,
    pub precedence: BTreeSet<(Target, String)>,
}

impl Sraes {
    fn check_names(&self) -> Result<()> {
        let ev = |e: &String| {
            if self.events.contains(e) {
                Ok(())
            } else {
                Err(Error::UnknownEvent(e.clone()))
            }
        };
        let tgt = |t: &Target| match t {
            Target::Event(e) => ev(e),
            Target::Undo(u) => {
                ev(u)?;
                if self.reversible.contains(u) {
                    Ok(())
                } else {
                    Err(Error::NotReversible(u.clone()))
                }
            }
        };
        for u in &self.reversible {
            ev(u)?;
        }
        for (e, t) in &self.causation {
            ev(e)?;
            tgt(t)?;
        }
        for (t, e) in &self.precedence {
            tgt(t)?;
            ev(e)?;
        }
        Ok(())
    }

    fn split(&self) -> EsSpec {
        let mut spec = EsSpec {
            events: self.events.clone(),
            reversible: self.reversible.clone(),
            ..EsSpec::default()
        };
        for (e, t) in &self.causation {
            match t {
                Target::Event(e2) => spec.causation.insert((e.clone(), e2.clone())),
                Target::Undo(u) => spec.rev_causation.insert((e.clone(), u.clone())),
            };
        }
        for (t, e) in &self.precedence {
            match t {
                Target::Event(e1) => spec.weak_causality.insert((e1.clone(), e.clone())),
                Target::Undo(u) => spec.prevention.insert((u.clone(), e.clone())),
            };
        }
        spec
    }
}

/// The six conditions of the merged presentation.
pub fn validate_sraes(k: &Sraes) -> ValidationReport {
    let mut r = ValidationReport::new("sraes");
    if let Err(e) = k.check_names() {
        r.violate("sraes-names", Vec::<String>::new(), e.to_string());
        return r;
    }
    let spec = k.split();
    let h = Raes::from_spec(&spec).expect("names checked");
    let ev = &h.ev;
    let n = h.n();
    let name = |i: usize| ev.names[i].as_str();
    // (2), (3) irreflexivity
    for e in 0..n {
        if h.causation.contains(e, e) {
            r.violate("sraes-causation-irreflexive", [name(e)], format!("condition 2: ≺ is not irreflexive at {}", name(e)));
        }
        if h.weak.contains(e, e) {
            r.violate("sraes-precedence-irreflexive", [name(e)], format!("condition 3: ◁ is not irreflexive at {}", name(e)));
        }
    }
    // (3) causes of every target acyclic under ◁ ∪ ≺
    let both = h.weak.union(&h.causation);
    for e in 0..n {
        let causes = h.causation.column(e);
        if let Some(c) = both.find_cycle_within(&causes) {
            r.violate(
                "sraes-causes-acyclic",
                std::iter::once(name(e).to_string()).chain(ev_names(ev, &c)),
                format!("condition 3: the causes of {} are cyclic under ◁ ∪ ≺", name(e)),
            );
        }
    }
    for u in h.reversible.ones() {
        if let Some(c) = both.find_cycle_within(&h.undo_history(u)) {
            r.violate(
                "sraes-causes-acyclic",
                std::iter::once(format!("undo {}", name(u))).chain(ev_names(ev, &c)),
                format!("condition 3: the causes of undoing {} are cyclic under ◁ ∪ ≺", name(u)),
            );
        }
        // (4)
        if !h.rev_causation.contains(u, u) {
            r.violate("sraes-undo-self-cause", [name(u)], format!("condition 4: {} ≺ undo {} is missing", name(u), name(u)));
        }
    }
    // (5)
    for (e, e2) in h.causation.pairs() {
        if h.weak.contains(e2, e) {
            r.violate("sraes-cause-not-precede", [name(e), name(e2)], format!("condition 5: {} ≺ {} and {} ◁ {}", name(e), name(e2), name(e2), name(e)));
        }
    }
    for (e, u) in h.rev_causation.pairs() {
        if h.prevention.contains(u, e) {
            r.violate(
                "sraes-cause-not-precede",
                [name(e), format!("undo {}", name(u)).as_str()],
                format!("condition 5: {} ≺ undo {} and undo {} ◁ {}", name(e), name(u), name(u), name(e)),
            );
        }
    }
    // (6)
    let s = sustained_causation(&h);
    for (e, e2) in s.pairs() {
        if !h.weak.contains(e, e2) {
            r.violate("sraes-sustained-in-precedence", [name(e), name(e2)], format!("condition 6: {} ≪ {} but not {} ◁ {}", name(e), name(e2), name(e), name(e2)));
        }
    }
    for (a, b) in s.transitive_closure().pairs() {
        if !s.contains(a, b) {
            r.violate("sraes-sustained-transitive", [name(a), name(b)], format!("condition 6: ≪ is not transitive at ({}, {})", name(a), name(b)));
        }
    }
    let conflict = h.conflict();
    if let Some(w) = conflict_inheritance_witness(&conflict, &s, &full_set(n)) {
        r.violate("sraes-conflict-inheritance", ev_names(ev, &w), "condition 6: conflict not inherited along ≪");
    }
    r
}

pub fn sraes_to_raes(k: &Sraes) -> Result<Raes> {
    let report = validate_sraes(k);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    let h = Raes::from_spec(&k.split())?;
    let report = validate_raes(&h);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    Ok(h)
}

pub fn raes_to_sraes(h: &Raes) -> Result<Sraes> {
    let report = validate_raes(h);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    let spec = h.to_spec();
    let mut k = Sraes {
        events: spec.events,
        reversible: spec.reversible,
        ..Sraes::default()
    };
    for (e, e2) in spec.causation {
        k.causation.insert((e, Target::Event(e2)));
    }
    for (e, u) in spec.rev_causation {
        k.causation.insert((e, Target::Undo(u)));
    }
    for (e, e2) in spec.weak_causality {
        k.precedence.insert((Target::Event(e), e2));
    }
    for (u, e) in spec.prevention {
        k.precedence.insert((Target::Undo(u), e));
    }
    let report = validate_sraes(&k);
    if !report.passed() {
        return Err(Error::invalid(report));
    }
    Ok(k)
}

pub(crate) fn validate_sraes_names(k: &Sraes) -> Result<()> {
    k.check_names()
}
