//! Dense binary relations over `0..n`, stored as one bit row per element.

use fixedbitset::FixedBitSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rel {
    rows: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Rel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl Rel {
    pub fn new(n: usize) -> Self {
        Rel {
            rows: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect(),
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Rel::new(n);
        for (i, j) in pairs {
            r.insert(i, j);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.rows[i].set(j, false);
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    /// Successors of `i`.
    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    /// Predecessors of `j`, computed on demand.
    pub fn column(&self, j: usize) -> FixedBitSet {
        let mut col = FixedBitSet::with_capacity(self.size());
        for (i, row) in self.rows.iter().enumerate() {
            if row.contains(j) {
                col.insert(i);
            }
        }
        col
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_clear())
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    /// Pairs in lexicographic index order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            out.extend(row.ones().map(|j| (i, j)));
        }
        out
    }

    pub fn inverse(&self) -> Rel {
        let mut r = Rel::new(self.size());
        for (i, j) in self.pairs() {
            r.insert(j, i);
        }
        r
    }

    pub fn union(&self, other: &Rel) -> Rel {
        let mut r = self.clone();
        for (a, b) in r.rows.iter_mut().zip(&other.rows) {
            a.union_with(b);
        }
        r
    }

    pub fn intersection(&self, other: &Rel) -> Rel {
        let mut r = self.clone();
        for (a, b) in r.rows.iter_mut().zip(&other.rows) {
            a.intersect_with(b);
        }
        r
    }

    pub fn difference(&self, other: &Rel) -> Rel {
        let mut r = self.clone();
        for (a, b) in r.rows.iter_mut().zip(&other.rows) {
            a.difference_with(b);
        }
        r
    }

    pub fn is_subset(&self, other: &Rel) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// Transitive closure (Warshall, one row-union per pivot hit).
    pub fn transitive_closure(&self) -> Rel {
        let mut r = self.clone();
        let n = r.size();
        for k in 0..n {
            let pivot = r.rows[k].clone();
            for i in 0..n {
                if r.rows[i].contains(k) {
                    r.rows[i].union_with(&pivot);
                }
            }
        }
        r
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.size()).all(|i| !self.contains(i, i))
    }

    /// `{j : j R* i}`: `i` together with everything reaching it.
    pub fn down_closure(&self, i: usize) -> FixedBitSet {
        let inv = self.inverse();
        let mut seen = FixedBitSet::with_capacity(self.size());
        let mut stack = vec![i];
        seen.insert(i);
        while let Some(x) = stack.pop() {
            for y in inv.rows[x].ones() {
                if !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// A cycle of the relation restricted to `within`, if one exists.
    /// The cycle is returned as its vertex sequence; a self-loop yields `[i]`.
    pub fn find_cycle_within(&self, within: &FixedBitSet) -> Option<Vec<usize>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.size();
        let mut state = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for start in within.ones() {
            if state[start] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, self.succ_within(start, within))];
            state[start] = 1;
            while let Some((v, succs)) = stack.last_mut() {
                let v = *v;
                if let Some(w) = succs.pop() {
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            parent[w] = v;
                            let s = self.succ_within(w, within);
                            stack.push((w, s));
                        }
                        1 => {
                            let mut cycle = vec![v];
                            let mut x = v;
                            while x != w {
                                x = parent[x];
                                cycle.push(x);
                            }
                            cycle.reverse();
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    fn succ_within(&self, v: usize, within: &FixedBitSet) -> Vec<usize> {
        // reversed so that pops visit successors in increasing order
        let mut s: Vec<usize> = self.rows[v].ones().filter(|&w| within.contains(w)).collect();
        s.reverse();
        s
    }

    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let mut all = FixedBitSet::with_capacity(self.size());
        all.insert_range(..);
        self.find_cycle_within(&all)
    }

    pub fn is_acyclic_within(&self, within: &FixedBitSet) -> bool {
        self.find_cycle_within(within).is_none()
    }

    /// Topological order of `within` with smallest-index tie breaking, or `None` on a cycle.
    pub fn topo_order_within(&self, within: &FixedBitSet) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.size()];
        for i in within.ones() {
            for j in self.rows[i].ones() {
                if within.contains(j) && i != j {
                    indeg[j] += 1;
                } else if i == j {
                    return None;
                }
            }
        }
        let mut ready: std::collections::BTreeSet<usize> =
            within.ones().filter(|&i| indeg[i] == 0).collect();
        let mut out = Vec::with_capacity(within.count_ones(..));
        while let Some(i) = ready.pop_first() {
            out.push(i);
            for j in self.rows[i].ones() {
                if within.contains(j) {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        ready.insert(j);
                    }
                }
            }
        }
        (out.len() == within.count_ones(..)).then_some(out)
    }
}

/// Convenience: a full bitset of size `n`.
pub fn full_set(n: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

pub fn set_of(n: usize, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in items {
        s.insert(i);
    }
    s
}

/// Subset of `0..n` encoded by the low bits of `mask`.
pub fn set_from_mask(n: usize, mask: u64) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in 0..n {
        if mask >> i & 1 == 1 {
            s.insert(i);
        }
    }
    s
}
