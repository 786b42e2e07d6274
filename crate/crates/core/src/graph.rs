//! Labelled transition systems over configurations.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub type Config = BTreeSet<String>;

/// One component of a step label: doing an event or undoing a reversible one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Do(String),
    Undo(String),
}

impl Action {
    pub fn event(&self) -> &str {
        match self {
            Action::Do(e) | Action::Undo(e) => e,
        }
    }

    fn rename(&self, map: &BTreeMap<String, String>) -> Option<Action> {
        Some(match self {
            Action::Do(e) => Action::Do(map.get(e)?.clone()),
            Action::Undo(e) => Action::Undo(map.get(e)?.clone()),
        })
    }
}

impl std::fmt::Display for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Action::Do(e) => write!(f, "{e}"),
            Action::Undo(e) => write!(f, "undo {e}"),
        }
    }
}

pub type Label = Vec<Action>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigGraph {
    pub nodes: BTreeSet<Config>,
    pub edges: BTreeSet<(Config, Label, Config)>,
}

impl ConfigGraph {
    pub fn root() -> Config {
        Config::new()
    }

    pub fn has_edge(&self, from: &[&str], label: &[Action], to: &[&str]) -> bool {
        let c = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Config>();
        self.edges.contains(&(c(from), label.to_vec(), c(to)))
    }

    pub fn out_edges<'a>(&'a self, from: &'a Config) -> impl Iterator<Item = &'a (Config, Label, Config)> + 'a {
        self.edges.iter().filter(move |(s, _, _)| s == from)
    }

    /// Renames every event through `map`; unknown names are an error.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Result<ConfigGraph> {
        let node = |c: &Config| -> Result<Config> {
            c.iter()
                .map(|e| map.get(e).cloned().ok_or_else(|| Error::UnknownEvent(e.clone())))
                .collect()
        };
        let mut out = ConfigGraph::default();
        for n in &self.nodes {
            out.nodes.insert(node(n)?);
        }
        for (s, l, t) in &self.edges {
            let l = l
                .iter()
                .map(|a| a.rename(map).ok_or_else(|| Error::UnknownEvent(a.event().to_string())))
                .collect::<Result<Label>>()?;
            out.edges.insert((node(s)?, l, node(t)?));
        }
        Ok(out)
    }
}

/// Whether `label_map` (on event names, applied elementwise to nodes and
/// labels) is an isomorphism from `g1` onto `g2`. The map must be injective
/// on the names `g1` uses.
pub fn graph_iso(g1: &ConfigGraph, g2: &ConfigGraph, label_map: &BTreeMap<String, String>) -> Result<bool> {
    let used: BTreeSet<&String> = g1.nodes.iter().flatten().chain(g1.edges.iter().flat_map(|(_, l, _)| l.iter().map(|a| match a {
        Action::Do(e) | Action::Undo(e) => e,
    }))).collect();
    let mut images = BTreeSet::new();
    for e in &used {
        let img = label_map.get(*e).ok_or_else(|| Error::UnknownEvent((*e).clone()))?;
        if !images.insert(img) {
            return Err(Error::Mismatch(format!("label map is not injective at `{img}`")));
        }
    }
    if g1.nodes.len() != g2.nodes.len() || g1.edges.len() != g2.edges.len() {
        return Ok(false);
    }
    Ok(&g1.rename(label_map)? == g2)
}

/// Identity map on the names occurring in `g`.
pub fn identity_labels(g: &ConfigGraph) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    for n in &g.nodes {
        for e in n {
            m.insert(e.clone(), e.clone());
        }
    }
    for (_, l, _) in &g.edges {
        for a in l {
            m.insert(a.event().to_string(), a.event().to_string());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(xs: &[&str]) -> Config {
        xs.iter().map(|x| x.to_string()).collect()
    }

    fn tiny() -> ConfigGraph {
        let mut g = ConfigGraph::default();
        g.nodes.insert(cfg(&[]));
        g.nodes.insert(cfg(&["a"]));
        g.edges.insert((cfg(&[]), vec![Action::Do("a".into())], cfg(&["a"])));
        g.edges.insert((cfg(&["a"]), vec![Action::Undo("a".into())], cfg(&[])));
        g
    }

    #[test]
    fn self_iso() {
        let g = tiny();
        assert!(graph_iso(&g, &g, &identity_labels(&g)).unwrap());
    }

    #[test]
    fn renamed_iso_and_size_mismatch() {
        let g = tiny();
        let map = BTreeMap::from([("a".to_string(), "x".to_string())]);
        let h = g.rename(&map).unwrap();
        assert!(graph_iso(&g, &h, &map).unwrap());
        assert!(!graph_iso(&g, &h, &identity_labels(&g)).unwrap());
        let mut smaller = h.clone();
        smaller.edges.pop_last();
        assert!(!graph_iso(&g, &smaller, &map).unwrap());
    }

    #[test]
    fn non_injective_map_rejected() {
        let mut g = tiny();
        g.nodes.insert(cfg(&["b"]));
        let map = BTreeMap::from([("a".to_string(), "x".to_string()), ("b".to_string(), "x".to_string())]);
        assert!(graph_iso(&g, &g, &map).is_err());
    }
}
