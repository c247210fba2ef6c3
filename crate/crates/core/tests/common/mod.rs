//! Brute-force reference for s-th-order components on small vertex sets.
//!
//! Builds the auxiliary graph explicitly from the adjacency definitions,
//! with its own indexing of the universe, and labels components by BFS.

#![allow(dead_code)]

use std::collections::VecDeque;

use hyperphase::connectivity::ConnectivityVariant;
use hyperphase::model::Hypergraph;

/// The universe in rank order, each element as a sorted set or an ordered tuple.
///
/// Colex order on s-subsets of `[0, n)` is numeric order of their bitmasks;
/// tuples are listed lexicographically.
pub fn universe(n: u32, s: u32, variant: ConnectivityVariant) -> Vec<Vec<u32>> {
    assert!(n <= 20);
    if variant == ConnectivityVariant::LooseTuple {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        tuples(n, s as usize, &mut cur, &mut out);
        out
    } else {
        (0u32..1 << n)
            .filter(|m| m.count_ones() == s)
            .map(|m| (0..n).filter(|v| m >> v & 1 == 1).collect())
            .collect()
    }
}

fn tuples(n: u32, s: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == s {
        out.push(cur.clone());
        return;
    }
    for v in 0..n {
        if !cur.contains(&v) {
            cur.push(v);
            tuples(n, s, cur, out);
            cur.pop();
        }
    }
}

fn mask(xs: &[u32]) -> u32 {
    xs.iter().fold(0, |m, &v| m | 1 << v)
}

/// Whether the edge `f` makes `a` and `b` adjacent, straight from the definitions.
pub fn adjacent(a: &[u32], b: &[u32], f: &[u32], variant: ConnectivityVariant) -> bool {
    let (ma, mb, mf) = (mask(a), mask(b), mask(f));
    if a == b {
        return false;
    }
    match variant {
        ConnectivityVariant::Standard => (ma | mb) & !mf == 0,
        ConnectivityVariant::LooseSet | ConnectivityVariant::LooseTuple => ma & mb == 0 && (ma | mb) & !mf == 0,
        ConnectivityVariant::TightSet => ma | mb == mf,
    }
}

/// Canonical labels (minimum member index) of the auxiliary-graph components.
pub fn bfs_labels(h: &Hypergraph, s: u32, variant: ConnectivityVariant) -> Vec<u64> {
    let elems = universe(h.n(), s, variant);
    let mut adj = vec![Vec::new(); elems.len()];
    for f in h.edges() {
        let mf = mask(f);
        let inside: Vec<usize> = (0..elems.len()).filter(|&i| mask(&elems[i]) & !mf == 0).collect();
        for (x, &i) in inside.iter().enumerate() {
            for &j in &inside[x + 1..] {
                if adjacent(&elems[i], &elems[j], f, variant) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
    }
    let mut label = vec![u64::MAX; elems.len()];
    for root in 0..elems.len() {
        if label[root] != u64::MAX {
            continue;
        }
        label[root] = root as u64;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if label[w] == u64::MAX {
                    label[w] = root as u64;
                    queue.push_back(w);
                }
            }
        }
    }
    label
}

/// Component sizes, descending.
pub fn sizes_of(labels: &[u64]) -> Vec<u64> {
    let mut counts = std::collections::BTreeMap::new();
    for &l in labels {
        *counts.entry(l).or_insert(0u64) += 1;
    }
    let mut v: Vec<u64> = counts.into_values().collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Every (s, variant) pair the rules allow for edges of size `r`.
pub fn valid_orders(r: u32) -> Vec<(u32, ConnectivityVariant)> {
    let mut out = Vec::new();
    for s in 1..r {
        for v in ConnectivityVariant::ALL {
            if v.allows(r, s) {
                out.push((s, v));
            }
        }
    }
    out
}
