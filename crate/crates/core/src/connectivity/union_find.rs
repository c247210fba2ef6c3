use std::collections::BTreeMap;
use std::io::Write;

use crate::combinatorics::{for_each_combination, Colex, DEFAULT_INDEX_SPACE_CAP};
use crate::model::Hypergraph;

use super::{pairs_within_edge, ConnectivityError, ConnectivityVariant};

/// Disjoint-set forest with path compression and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        assert!(len as u64 <= u32::MAX as u64 + 1, "too many elements for u32 indices");
        Self { parent: (0..len).map(|i| i as u32).collect(), size: vec![1; len] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        true
    }
}

/// Component labels over the s-set (or s-tuple) universe.
///
/// A component's id is the smallest rank it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub s: u32,
    pub variant: ConnectivityVariant,
    pub universe_size: u64,
    /// rank -> component id
    pub label: Vec<u64>,
    /// component id -> cardinality
    pub sizes: BTreeMap<u64, u64>,
}

impl ComponentLabeling {
    /// Builds canonical labels from an arbitrary root assignment.
    pub fn from_roots(s: u32, variant: ConnectivityVariant, roots: &[u32]) -> Self {
        // first occurrence of a root in rank order is the component minimum
        let mut min_of_root: Vec<u64> = vec![u64::MAX; roots.len()];
        let mut label = Vec::with_capacity(roots.len());
        let mut sizes = BTreeMap::new();
        for (i, &root) in roots.iter().enumerate() {
            let slot = &mut min_of_root[root as usize];
            if *slot == u64::MAX {
                *slot = i as u64;
            }
            label.push(*slot);
            *sizes.entry(*slot).or_insert(0) += 1;
        }
        Self { s, variant, universe_size: roots.len() as u64, label, sizes }
    }

    pub fn component_of(&self, rank: u64) -> u64 {
        self.label[rank as usize]
    }

    /// Ranks in the component with the given id, ascending.
    pub fn members(&self, id: u64) -> Vec<u64> {
        (id..self.universe_size).filter(|&i| self.label[i as usize] == id).collect()
    }

    pub fn num_components(&self) -> usize {
        self.sizes.len()
    }

    /// Component ids ordered by size descending, then id ascending.
    pub fn ordered_components(&self) -> Vec<(u64, u64)> {
        let mut v: Vec<(u64, u64)> = self.sizes.iter().map(|(&id, &sz)| (id, sz)).collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        v
    }
}

/// Labels every s-set of `h` by its component under `variant`.
pub fn components_union_find(
    h: &Hypergraph,
    s: u32,
    variant: ConnectivityVariant,
) -> Result<ComponentLabeling, ConnectivityError> {
    components_union_find_capped(h, s, variant, DEFAULT_INDEX_SPACE_CAP)
}

pub fn components_union_find_capped(
    h: &Hypergraph,
    s: u32,
    variant: ConnectivityVariant,
    cap: u64,
) -> Result<ComponentLabeling, ConnectivityError> {
    variant.check(h.r(), s)?;
    let size = variant.universe_size(h.n(), s)?;
    if size > cap as u128 || size > u32::MAX as u128 + 1 {
        return Err(ConnectivityError::Capacity { size, cap });
    }
    let mut dsu = DisjointSets::new(size as usize);
    let colex = Colex::new(h.n(), s)?;
    let mut ranks = Vec::new();
    for edge in h.edges() {
        if variant == ConnectivityVariant::Standard {
            // every pair of s-subsets is adjacent, so a chain spans the same classes
            ranks.clear();
            for_each_combination(edge, s as usize, |sub| ranks.push(colex.rank(sub) as u32));
            for w in ranks.windows(2) {
                dsu.union(w[0], w[1]);
            }
        } else {
            pairs_within_edge(edge, h.n(), variant, s, &colex, &mut |a, b| {
                dsu.union(a as u32, b as u32);
            })?;
        }
    }
    let roots: Vec<u32> = (0..size as u32).map(|i| dsu.find(i)).collect();
    Ok(ComponentLabeling::from_roots(s, variant, &roots))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeStats {
    pub largest: u64,
    /// 0 when there is a single component
    pub second_largest: u64,
    pub count: u64,
}

pub fn component_size_stats(labeling: &ComponentLabeling) -> SizeStats {
    let (mut first, mut second) = (0, 0);
    for &sz in labeling.sizes.values() {
        if sz > first {
            second = first;
            first = sz;
        } else if sz > second {
            second = sz;
        }
    }
    SizeStats { largest: first, second_largest: second, count: labeling.sizes.len() as u64 }
}

/// Writes `component_id size` lines (size descending, id ascending), each
/// followed by the member ranks when `members` is set, then the summary line.
pub fn write_component_dump(
    labeling: &ComponentLabeling,
    members: bool,
    mut out: impl Write,
) -> std::io::Result<()> {
    let mut by_id: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    if members {
        for (rank, &id) in labeling.label.iter().enumerate() {
            by_id.entry(id).or_default().push(rank as u64);
        }
    }
    for (id, size) in labeling.ordered_components() {
        write!(out, "{id} {size}")?;
        if let Some(ranks) = by_id.get(&id) {
            for r in ranks {
                write!(out, " {r}")?;
            }
        }
        writeln!(out)?;
    }
    let st = component_size_stats(labeling);
    writeln!(out, "largest={} second={} count={}", st.largest, st.second_largest, st.count)
}
