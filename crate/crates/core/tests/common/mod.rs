//! Brute-force oracles over the name-level description of a net. They share
//! no code with the library beyond reading the model.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use revnet::es::EsSpec;
use revnet::graph::Action;
use revnet::net::NetSpec;

pub type Names = BTreeSet<String>;

pub fn set(xs: &[&str]) -> Names {
    xs.iter().map(|x| x.to_string()).collect()
}

/// Name-level token game over single firings.
pub struct Oracle {
    pub transitions: Vec<String>,
    pub pre: BTreeMap<String, Names>,
    pub post: BTreeMap<String, Names>,
    pub inhib: BTreeMap<String, Names>,
    pub marking: Names,
}

impl Oracle {
    pub fn new(spec: &NetSpec) -> Self {
        let mut o = Oracle {
            transitions: spec.transitions.iter().cloned().collect(),
            pre: BTreeMap::new(),
            post: BTreeMap::new(),
            inhib: BTreeMap::new(),
            marking: spec.marking.iter().cloned().collect(),
        };
        for t in &spec.transitions {
            for m in [&mut o.pre, &mut o.post, &mut o.inhib] {
                m.insert(t.clone(), Names::new());
            }
        }
        for (x, y) in &spec.flow {
            if spec.transitions.contains(y) {
                o.pre.get_mut(y).unwrap().insert(x.clone());
            } else {
                o.post.get_mut(x).unwrap().insert(y.clone());
            }
        }
        for (s, t) in &spec.inhibitor {
            o.inhib.get_mut(t).unwrap().insert(s.clone());
        }
        o
    }

    pub fn fire(&self, m: &Names, t: &str) -> Option<Names> {
        if !self.pre[t].is_subset(m) || !self.inhib[t].is_disjoint(m) {
            return None;
        }
        let mut out: Names = m.difference(&self.pre[t]).cloned().collect();
        out.extend(self.post[t].iter().cloned());
        Some(out)
    }

    pub fn reach(&self) -> BTreeSet<Names> {
        let mut seen = BTreeSet::from([self.marking.clone()]);
        let mut todo = vec![self.marking.clone()];
        while let Some(m) = todo.pop() {
            for t in &self.transitions {
                if let Some(m2) = self.fire(&m, t) {
                    if seen.insert(m2.clone()) {
                        todo.push(m2);
                    }
                }
            }
        }
        seen
    }

    /// Sets of transitions summing firing sequences (single-fire nets).
    pub fn states(&self) -> BTreeSet<Names> {
        let mut seen = BTreeSet::from([(Names::new(), self.marking.clone())]);
        let mut todo = vec![(Names::new(), self.marking.clone())];
        while let Some((x, m)) = todo.pop() {
            for t in &self.transitions {
                if let Some(m2) = self.fire(&m, t) {
                    assert!(!x.contains(t), "{t} fired twice");
                    let mut x2 = x.clone();
                    x2.insert(t.clone());
                    if seen.insert((x2.clone(), m2.clone())) {
                        todo.push((x2, m2));
                    }
                }
            }
        }
        seen.into_iter().map(|(x, _)| x).collect()
    }

    pub fn lessdot(&self, t: &str, u: &str) -> bool {
        !self.pre[t].is_disjoint(&self.inhib[u])
    }

    pub fn leadsto(&self, t: &str, u: &str) -> bool {
        !self.post[u].is_disjoint(&self.inhib[t])
    }

    /// Left closed under `⋖` and `⤳ ∪ ⋖` acyclic on `x`.
    pub fn is_config(&self, x: &Names) -> bool {
        let closed = x.iter().all(|u| self.transitions.iter().all(|t| !self.lessdot(t, u) || x.contains(t)));
        let mut left = x.clone();
        loop {
            let src = left
                .iter()
                .find(|u| left.iter().all(|t| !(self.lessdot(t, u) || self.leadsto(t, u))))
                .cloned();
            match src {
                Some(u) => {
                    left.remove(&u);
                }
                None => break,
            }
        }
        closed && left.is_empty()
    }

    pub fn configs(&self) -> Vec<Names> {
        let n = self.transitions.len();
        (0..1u32 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.transitions[i].clone()).collect())
            .filter(|x| self.is_config(x))
            .collect()
    }
}


/// Name-level event structure, read straight from the specification.
pub struct EsOracle {
    pub events: Vec<String>,
    pub reversible: Names,
    pub causation: BTreeSet<(String, String)>,
    pub weak: BTreeSet<(String, String)>,
    pub rev_causation: BTreeSet<(String, String)>,
    pub prevention: BTreeSet<(String, String)>,
}

pub type Edge = (Names, Vec<Action>, Names);

impl EsOracle {
    pub fn new(spec: &EsSpec) -> Self {
        EsOracle {
            events: spec.events.iter().cloned().collect(),
            reversible: spec.reversible.clone(),
            causation: spec.causation.clone(),
            weak: spec.weak_causality.clone(),
            rev_causation: spec.rev_causation.clone(),
            prevention: spec.prevention.clone(),
        }
    }

    /// `weak` restricted to `within` has no cycle (repeated sink removal).
    pub fn weak_acyclic(&self, within: &Names) -> bool {
        let mut left = within.clone();
        loop {
            let sink = left
                .iter()
                .find(|e| !self.weak.iter().any(|(x, y)| x == *e && left.contains(y)))
                .cloned();
            match sink {
                Some(e) => {
                    left.remove(&e);
                }
                None => return left.is_empty(),
            }
        }
    }

    pub fn enabled(&self, x: &Names, a: &Names, b: &Names) -> bool {
        if !a.is_disjoint(x) || !b.is_subset(x) || !b.is_subset(&self.reversible) {
            return false;
        }
        let xa: Names = x.union(a).cloned().collect();
        if !self.weak_acyclic(&xa) {
            return false;
        }
        let x_minus_b: Names = x.difference(b).cloned().collect();
        for e in a {
            if self.causation.iter().any(|(c, t)| t == e && !x_minus_b.contains(c)) {
                return false;
            }
            if self.weak.iter().any(|(s, t)| s == e && xa.contains(t)) {
                return false;
            }
        }
        for u in b {
            if self
                .rev_causation
                .iter()
                .any(|(c, t)| t == u && !(x_minus_b.contains(c) || c == u))
            {
                return false;
            }
            if self.prevention.iter().any(|(s, t)| s == u && xa.contains(t)) {
                return false;
            }
        }
        true
    }

    /// Every `(A, B)` with `A ∪ B` nonempty, `A` outside `x`, `B` inside it.
    fn steps(&self, x: &Names, mixed: bool) -> Vec<(Names, Names)> {
        let items: Vec<(bool, String)> = self
            .events
            .iter()
            .map(|e| (!x.contains(e), e.clone()))
            .collect();
        let mut out = Vec::new();
        for mask in 1u64..1 << items.len() {
            if !mixed && mask.count_ones() != 1 {
                continue;
            }
            let (mut a, mut b) = (Names::new(), Names::new());
            for (i, (fresh, e)) in items.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    if *fresh {
                        a.insert(e.clone());
                    } else {
                        b.insert(e.clone());
                    }
                }
            }
            out.push((a, b));
        }
        out
    }

    pub fn graph(&self, mixed: bool) -> (BTreeSet<Names>, BTreeSet<Edge>) {
        let mut nodes = BTreeSet::from([Names::new()]);
        let mut edges = BTreeSet::new();
        let mut todo = vec![Names::new()];
        while let Some(x) = todo.pop() {
            for (a, b) in self.steps(&x, mixed) {
                if !self.enabled(&x, &a, &b) {
                    continue;
                }
                let y: Names = x.difference(&b).chain(a.iter()).cloned().collect();
                let mut label: Vec<Action> = a
                    .iter()
                    .map(|e| Action::Do(e.clone()))
                    .chain(b.iter().map(|u| Action::Undo(u.clone())))
                    .collect();
                label.sort();
                edges.insert((x.clone(), label, y.clone()));
                if nodes.insert(y.clone()) {
                    todo.push(y);
                }
            }
        }
        (nodes, edges)
    }

    /// AES configurations: left-closed under causation, weak causality acyclic.
    pub fn aes_configs(&self) -> Vec<Names> {
        let n = self.events.len();
        (0u64..1 << n)
            .map(|mask| {
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.events[i].clone())
                    .collect::<Names>()
            })
            .filter(|x| {
                self.causation.iter().all(|(c, e)| !x.contains(e) || x.contains(c)) && self.weak_acyclic(x)
            })
            .collect()
    }

    /// `y` extends `x`: superset and nothing new weakly precedes anything old.
    pub fn extends(&self, x: &Names, y: &Names) -> bool {
        x.is_subset(y)
            && y.difference(x).all(|n| x.iter().all(|o| !self.weak.contains(&(n.clone(), o.clone()))))
    }
}
