//! Petri nets with inhibitor arcs and their step-firing token game.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Default cap on explored states.
pub const DEFAULT_BOUND: usize = 1_000_000;

/// Name-level description of a net, as read from or written to a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NetSpec {
    pub places: BTreeSet<String>,
    pub transitions: BTreeSet<String>,
    pub flow: BTreeSet<(String, String)>,
    pub inhibitor: BTreeSet<(String, String)>,
    pub marking: BTreeSet<String>,
}

impl NetSpec {
    /// Shorthand used by fixtures and tests: `arc` lists flow pairs, `inh` inhibitor pairs.
    pub fn build(
        places: &[&str],
        transitions: &[&str],
        flow: &[(&str, &str)],
        inhibitor: &[(&str, &str)],
        marking: &[&str],
    ) -> Self {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        let own2 = |v: &[(&str, &str)]| v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        NetSpec {
            places: own(places),
            transitions: own(transitions),
            flow: own2(flow),
            inhibitor: own2(inhibitor),
            marking: own(marking),
        }
    }
}

pub type Marking = FixedBitSet;

/// A multiset of transitions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step(BTreeMap<usize, u32>);

impl Step {
    pub fn empty() -> Self {
        Step::default()
    }

    pub fn single(t: usize) -> Self {
        Step(BTreeMap::from([(t, 1)]))
    }


    pub fn count(&self, t: usize) -> u32 {
        self.0.get(&t).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|(&t, &c)| (t, c))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_set(&self) -> bool {
        self.0.values().all(|&c| c == 1)
    }

    /// The step with one occurrence of `t` removed.
    pub fn without_one(&self, t: usize) -> Step {
        let mut s = self.clone();
        if let Some(c) = s.0.get_mut(&t) {
            *c -= 1;
            if *c == 0 {
                s.0.remove(&t);
            }
        }
        s
    }
}

impl FromIterator<usize> for Step {
    fn from_iter<I: IntoIterator<Item = usize>>(ts: I) -> Self {
        let mut s = Step::default();
        for t in ts {
            *s.0.entry(t).or_insert(0) += 1;
        }
        s
    }
}

/// Sum of executed transitions along a firing sequence, by name.
pub type NetState = BTreeMap<String, u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ipt {
    places: Vec<String>,
    transitions: Vec<String>,
    place_ix: BTreeMap<String, usize>,
    trans_ix: BTreeMap<String, usize>,
    pre: Vec<FixedBitSet>,
    post: Vec<FixedBitSet>,
    inhib: Vec<FixedBitSet>,
    producers: Vec<FixedBitSet>,
    consumers: Vec<FixedBitSet>,
    marking: Marking,
}

impl Ipt {
    pub fn new(spec: &NetSpec) -> Result<Ipt> {
        if let Some(x) = spec.places.intersection(&spec.transitions).next() {
            return Err(Error::PlaceTransitionClash(x.clone()));
        }
        let places: Vec<String> = spec.places.iter().cloned().collect();
        let transitions: Vec<String> = spec.transitions.iter().cloned().collect();
        let place_ix: BTreeMap<String, usize> =
            places.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let trans_ix: BTreeMap<String, usize> =
            transitions.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let (np, nt) = (places.len(), transitions.len());
        let mut net = Ipt {
            pre: vec![FixedBitSet::with_capacity(np); nt],
            post: vec![FixedBitSet::with_capacity(np); nt],
            inhib: vec![FixedBitSet::with_capacity(np); nt],
            producers: vec![FixedBitSet::with_capacity(nt); np],
            consumers: vec![FixedBitSet::with_capacity(nt); np],
            marking: FixedBitSet::with_capacity(np),
            places,
            transitions,
            place_ix,
            trans_ix,
        };
        for (x, y) in &spec.flow {
            match (net.place_ix.get(x), net.trans_ix.get(y), net.trans_ix.get(x), net.place_ix.get(y)) {
                (Some(&s), Some(&t), _, _) => {
                    net.pre[t].insert(s);
                    net.consumers[s].insert(t);
                }
                (_, _, Some(&t), Some(&s)) => {
                    net.post[t].insert(s);
                    net.producers[s].insert(t);
                }
                _ => {
                    for z in [x, y] {
                        if !net.place_ix.contains_key(z) && !net.trans_ix.contains_key(z) {
                            return Err(Error::UnknownId(z.clone()));
                        }
                    }
                    return Err(Error::BadFlow(x.clone(), y.clone()));
                }
            }
        }
        for (s, t) in &spec.inhibitor {
            let s = *net.place_ix.get(s).ok_or_else(|| Error::UnknownPlace(s.clone()))?;
            let t = *net.trans_ix.get(t).ok_or_else(|| Error::UnknownTransition(t.clone()))?;
            net.inhib[t].insert(s);
        }
        for s in &spec.marking {
            let s = *net.place_ix.get(s).ok_or_else(|| Error::UnknownPlace(s.clone()))?;
            net.marking.insert(s);
        }
        if let Some(t) = (0..nt).find(|&t| net.pre[t].is_clear()) {
            return Err(Error::EmptyPreset(net.transitions[t].clone()));
        }
        Ok(net)
    }

    pub fn to_spec(&self) -> NetSpec {
        let mut spec = NetSpec {
            places: self.places.iter().cloned().collect(),
            transitions: self.transitions.iter().cloned().collect(),
            marking: self.names_of_places(&self.marking).into_iter().collect(),
            ..NetSpec::default()
        };
        for t in 0..self.n_transitions() {
            let tn = &self.transitions[t];
            for s in self.pre[t].ones() {
                spec.flow.insert((self.places[s].clone(), tn.clone()));
            }
            for s in self.post[t].ones() {
                spec.flow.insert((tn.clone(), self.places[s].clone()));
            }
            for s in self.inhib[t].ones() {
                spec.inhibitor.insert((self.places[s].clone(), tn.clone()));
            }
        }
        spec
    }

    pub fn n_places(&self) -> usize {
        self.places.len()
    }

    pub fn n_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn transitions(&self) -> &[String] {
        &self.transitions
    }

    pub fn place_name(&self, s: usize) -> &str {
        &self.places[s]
    }

    pub fn trans_name(&self, t: usize) -> &str {
        &self.transitions[t]
    }

    pub fn place_id(&self, name: &str) -> Option<usize> {
        self.place_ix.get(name).copied()
    }

    pub fn trans_id(&self, name: &str) -> Option<usize> {
        self.trans_ix.get(name).copied()
    }

    /// Preset of transition `t` (places).
    pub fn pre(&self, t: usize) -> &FixedBitSet {
        &self.pre[t]
    }

    pub fn post(&self, t: usize) -> &FixedBitSet {
        &self.post[t]
    }

    pub fn inhib(&self, t: usize) -> &FixedBitSet {
        &self.inhib[t]
    }

    /// Preset of place `s` (the transitions producing into it).
    pub fn place_pre(&self, s: usize) -> &FixedBitSet {
        &self.producers[s]
    }

    /// Postset of place `s` (the transitions consuming from it).
    pub fn place_post(&self, s: usize) -> &FixedBitSet {
        &self.consumers[s]
    }

    pub fn initial_marking(&self) -> &Marking {
        &self.marking
    }

    pub fn empty_places(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.n_places())
    }

    pub fn empty_transitions(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.n_transitions())
    }

    pub fn names_of_places(&self, set: &FixedBitSet) -> Vec<String> {
        set.ones().map(|s| self.places[s].clone()).collect()
    }

    pub fn names_of_transitions(&self, set: &FixedBitSet) -> Vec<String> {
        set.ones().map(|t| self.transitions[t].clone()).collect()
    }

    pub fn step_names(&self, step: &Step) -> Vec<String> {
        step.iter()
            .flat_map(|(t, c)| std::iter::repeat_n(self.transitions[t].clone(), c as usize))
            .collect()
    }

    pub fn marking_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Marking> {
        let mut m = self.empty_places();
        for n in names {
            let n = n.as_ref();
            m.insert(self.place_id(n).ok_or_else(|| Error::UnknownPlace(n.to_string()))?);
        }
        Ok(m)
    }

    pub fn step_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Step> {
        let ids = names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.trans_id(n).ok_or_else(|| Error::UnknownTransition(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Step::from_iter(ids))
    }

    pub fn transitions_of<S: AsRef<str>>(&self, names: &[S]) -> Result<FixedBitSet> {
        let mut set = self.empty_transitions();
        for n in names {
            let n = n.as_ref();
            set.insert(self.trans_id(n).ok_or_else(|| Error::UnknownTransition(n.to_string()))?);
        }
        Ok(set)
    }

    /// `pre x` by name, for a place or a transition.
    pub fn preset(&self, x: &str) -> Result<BTreeSet<String>> {
        if let Some(t) = self.trans_id(x) {
            Ok(self.names_of_places(&self.pre[t]).into_iter().collect())
        } else if let Some(s) = self.place_id(x) {
            Ok(self.names_of_transitions(&self.producers[s]).into_iter().collect())
        } else {
            Err(Error::UnknownId(x.to_string()))
        }
    }

    pub fn postset(&self, x: &str) -> Result<BTreeSet<String>> {
        if let Some(t) = self.trans_id(x) {
            Ok(self.names_of_places(&self.post[t]).into_iter().collect())
        } else if let Some(s) = self.place_id(x) {
            Ok(self.names_of_transitions(&self.consumers[s]).into_iter().collect())
        } else {
            Err(Error::UnknownId(x.to_string()))
        }
    }

    pub fn inhibset(&self, t: &str) -> Result<BTreeSet<String>> {
        let t = self.trans_id(t).ok_or_else(|| Error::UnknownTransition(t.to_string()))?;
        Ok(self.names_of_places(&self.inhib[t]).into_iter().collect())
    }

    /// The net with only the transitions in `keep`; places and marking unchanged.
    pub fn restrict(&self, keep: &FixedBitSet) -> Ipt {
        let mut spec = self.to_spec();
        let dropped: BTreeSet<String> = (0..self.n_transitions())
            .filter(|t| !keep.contains(*t))
            .map(|t| self.transitions[t].clone())
            .collect();
        spec.transitions.retain(|t| !dropped.contains(t));
        spec.flow.retain(|(x, y)| !dropped.contains(x) && !dropped.contains(y));
        spec.inhibitor.retain(|(_, t)| !dropped.contains(t));
        Ipt::new(&spec).expect("restriction of a well-formed net is well formed")
    }

    /// Multiset of places `pre(A)` as counts.
    fn counts(&self, step: &Step, sets: &[FixedBitSet]) -> Vec<u32> {
        let mut c = vec![0u32; self.n_places()];
        for (t, k) in step.iter() {
            for s in sets[t].ones() {
                c[s] += k;
            }
        }
        c
    }

    /// Step enabling: `pre(A) ⊆ m`, `inhib(A) ∩ m = ∅`, and no member of `A`
    /// is inhibited by what the rest of `A` produces.
    pub fn enabled(&self, m: &Marking, step: &Step) -> bool {
        let pre = self.counts(step, &self.pre);
        if pre.iter().enumerate().any(|(s, &k)| k > u32::from(m.contains(s))) {
            return false;
        }
        if step.support().any(|t| !self.inhib[t].is_disjoint(m)) {
            return false;
        }
        step.support().all(|t| {
            let rest = self.counts(&step.without_one(t), &self.post);
            self.inhib[t].ones().all(|s| rest[s] == 0)
        })
    }

    pub fn enabled_single(&self, m: &Marking, t: usize) -> bool {
        self.pre[t].is_subset(m) && self.inhib[t].is_disjoint(m)
    }

    /// `m - pre(A) + post(A)`; fails when `A` is not enabled or the result is not a set.
    pub fn fire(&self, m: &Marking, step: &Step) -> Result<Marking> {
        if !self.enabled(m, step) {
            return Err(Error::NotEnabled {
                step: self.step_names(step),
                marking: self.names_of_places(m),
            });
        }
        let pre = self.counts(step, &self.pre);
        let post = self.counts(step, &self.post);
        let mut out = self.empty_places();
        for s in 0..self.n_places() {
            let k = u32::from(m.contains(s)) - pre[s] + post[s];
            if k > 1 {
                return Err(Error::Unsafe {
                    step: self.step_names(step),
                    place: self.places[s].clone(),
                });
            }
            out.set(s, k == 1);
        }
        Ok(out)
    }

    pub fn fire_single(&self, m: &Marking, t: usize) -> Result<Marking> {
        self.fire(m, &Step::single(t))
    }

    /// Fires a sequence of single transitions from the initial marking.
    pub fn fire_sequence(&self, seq: &[usize]) -> Result<Marking> {
        let mut m = self.marking.clone();
        for &t in seq {
            m = self.fire_single(&m, t)?;
        }
        Ok(m)
    }

    /// Breadth-first closure over single-transition firings, in transition order.
    pub fn reachable_markings(&self, bound: usize) -> Result<ReachGraph> {
        self.reachable_markings_ordered(bound, &(0..self.n_transitions()).collect::<Vec<_>>())
    }

    /// As [`Ipt::reachable_markings`] with a caller-chosen transition order.
    pub fn reachable_markings_ordered(&self, bound: usize, order: &[usize]) -> Result<ReachGraph> {
        let mut g = ReachGraph::default();
        g.insert(self.marking.clone());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let m = g.markings[i].clone();
            for &t in order {
                if !self.enabled_single(&m, t) {
                    continue;
                }
                let m2 = self.fire_single(&m, t)?;
                let (j, fresh) = g.insert(m2);
                if fresh {
                    if g.markings.len() > bound {
                        return Err(Error::BoundExceeded { bound, frontier: queue.len() + 1 });
                    }
                    queue.push_back(j);
                }
                g.edges.push((i, t, j));
            }
        }
        Ok(g)
    }

    /// Explores multiset markings; false as soon as a place would hold two tokens.
    pub fn is_safe(&self, bound: usize) -> Result<bool> {
        let init: Vec<u32> = (0..self.n_places()).map(|s| u32::from(self.marking.contains(s))).collect();
        let mut seen: std::collections::HashSet<Vec<u32>> = [init.clone()].into();
        let mut queue = VecDeque::from([init]);
        while let Some(m) = queue.pop_front() {
            for t in 0..self.n_transitions() {
                let ok = self.pre[t].ones().all(|s| m[s] >= 1) && self.inhib[t].ones().all(|s| m[s] == 0);
                if !ok {
                    continue;
                }
                let mut m2 = m.clone();
                for s in self.pre[t].ones() {
                    m2[s] -= 1;
                }
                for s in self.post[t].ones() {
                    m2[s] += 1;
                }
                if m2.iter().any(|&k| k > 1) {
                    return Ok(false);
                }
                if seen.insert(m2.clone()) {
                    if seen.len() > bound {
                        return Err(Error::BoundExceeded { bound, frontier: queue.len() + 1 });
                    }
                    queue.push_back(m2);
                }
            }
        }
        Ok(true)
    }

    /// All sums of executions. With `require_single_fire`, a transition occurring
    /// twice along some sequence is reported as an error.
    pub fn states(&self, require_single_fire: bool, bound: usize) -> Result<BTreeSet<NetState>> {
        let nt = self.n_transitions();
        let start = vec![0u32; nt];
        let mut seen: HashMap<Vec<u32>, Marking> = HashMap::from([(start.clone(), self.marking.clone())]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let m = seen[&x].clone();
            for t in 0..nt {
                if !self.enabled_single(&m, t) {
                    continue;
                }
                if require_single_fire && x[t] > 0 {
                    return Err(Error::FiredTwice(self.transitions[t].clone()));
                }
                let m2 = self.fire_single(&m, t)?;
                let mut x2 = x.clone();
                x2[t] += 1;
                if !seen.contains_key(&x2) {
                    seen.insert(x2.clone(), m2);
                    if seen.len() > bound {
                        return Err(Error::BoundExceeded { bound, frontier: queue.len() + 1 });
                    }
                    queue.push_back(x2);
                }
            }
        }
        Ok(seen
            .into_keys()
            .map(|x| {
                x.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(t, &k)| (self.transitions[t].clone(), k))
                    .collect()
            })
            .collect())
    }

    /// Checks, at every reachable marking, that each enabled two-element step
    /// can be fired in both orders reaching the same marking, and that no
    /// step repeating a transition is enabled.
    pub fn check_step_linearization(&self, bound: usize) -> Result<Option<LinearizationFailure>> {
        let g = self.reachable_markings(bound)?;
        let nt = self.n_transitions();
        for m in &g.markings {
            for t in 0..nt {
                if self.enabled(m, &Step::from_iter([t, t])) {
                    return Ok(Some(self.lin_failure(m, t, t)));
                }
                for u in t + 1..nt {
                    let step = Step::from_iter([t, u]);
                    if !self.enabled(m, &step) {
                        continue;
                    }
                    let target = self.fire(m, &step)?;
                    let via = |a: usize, b: usize| {
                        self.fire_single(m, a).and_then(|m1| self.fire_single(&m1, b)).ok()
                    };
                    if via(t, u).as_ref() != Some(&target) || via(u, t).as_ref() != Some(&target) {
                        return Ok(Some(self.lin_failure(m, t, u)));
                    }
                }
            }
        }
        Ok(None)
    }

    fn lin_failure(&self, m: &Marking, t: usize, u: usize) -> LinearizationFailure {
        LinearizationFailure {
            marking: self.names_of_places(m),
            step: vec![self.transitions[t].clone(), self.transitions[u].clone()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationFailure {
    pub marking: Vec<String>,
    pub step: Vec<String>,
}

/// Reachable markings in discovery order plus the single-firing edges between them.
#[derive(Clone, Debug, Default)]
pub struct ReachGraph {
    pub markings: Vec<Marking>,
    pub edges: Vec<(usize, usize, usize)>,
    index: HashMap<Marking, usize>,
}

impl ReachGraph {
    fn insert(&mut self, m: Marking) -> (usize, bool) {
        if let Some(&i) = self.index.get(&m) {
            return (i, false);
        }
        let i = self.markings.len();
        self.index.insert(m.clone(), i);
        self.markings.push(m);
        (i, true)
    }

    pub fn index_of(&self, m: &Marking) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Marking) -> bool {
        self.index.contains_key(m)
    }

    pub fn len(&self) -> usize {
        self.markings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.markings.is_empty()
    }

    /// Markings as sorted name sets.
    pub fn marking_names(&self, net: &Ipt) -> BTreeSet<Vec<String>> {
        self.markings.iter().map(|m| net.names_of_places(m)).collect()
    }
}
