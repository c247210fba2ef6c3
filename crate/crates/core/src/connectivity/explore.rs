//! Stack-based component exploration under the standard variant.
//!
//! Both engines keep the live s-sets on a stack (last in, first out) and
//! query each r-set around the s-set being expanded at most once. The set of
//! unqueried r-sets is never materialized: an r-set `F ⊇ S` is unqueried
//! exactly when no other s-subset of `F` has been expanded yet, so
//! membership is a check over the `C(r, s)` subsets of `F` and counting is
//! `C(n-s, r-s)` minus the r-sets blocked by earlier s-sets
//! ([`CountStrategy::Complement`]), or a direct walk over every `F ⊇ S`
//! ([`CountStrategy::Direct`]). Both give identical traces.
//!
//! Tie-breaking is fixed: new starting s-sets are the lowest unvisited rank,
//! and the s-subsets of a discovered edge are pushed in ascending rank, so
//! the highest-ranked one is expanded next.

use std::collections::{HashMap, HashSet};

use crate::combinatorics::{binom, binom_u64, for_each_combination, Colex, DEFAULT_INDEX_SPACE_CAP};
use crate::model::Hypergraph;

use super::ConnectivityError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaltReason {
    /// the live stack emptied
    Exhausted,
    /// the fresh family around the top of the stack fell below `(1-ε) C(n, r-s)`
    EpsilonHalt,
}

impl HaltReason {
    pub fn name(self) -> &'static str {
        match self {
            Self::Exhausted => "exhausted",
            Self::EpsilonHalt => "epsilon_halt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountStrategy {
    /// walk every r-set containing the expanded s-set
    Direct,
    /// subtract r-sets blocked by previously seen s-sets
    Complement,
    /// whichever of the two touches fewer r-sets
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ExploreOptions {
    pub strategy: CountStrategy,
    /// Keep the rank of every queried r-set. Forces [`CountStrategy::Direct`].
    pub record_queries: bool,
}

impl ExploreOptions {
    pub fn recording() -> Self {
        Self { strategy: CountStrategy::Direct, record_queries: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscoveredEdge {
    /// index into the hypergraph's edge list
    pub edge: usize,
    pub rank: u64,
    /// s-sets that were neutral before this edge was found
    pub new_sets: u32,
}

/// What happened when one live s-set was moved to the dead family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionStep {
    pub set: u64,
    /// size of the family of r-sets eligible for querying around `set`
    pub family: u64,
    pub queried: u64,
    /// number of s-sets that had entered the live family before this step
    pub touched_before: usize,
    pub edges: Vec<DiscoveredEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplorationTrace {
    pub start: u64,
    /// ranks in the order they moved from live to dead
    pub visited: Vec<u64>,
    /// still live when the search stopped (empty unless halted early)
    pub live: Vec<u64>,
    /// every s-set that entered the live family, in order
    pub touched: Vec<u64>,
    pub queried: u64,
    pub halt_reason: HaltReason,
    pub steps: Vec<ExpansionStep>,
    /// ranks of queried r-sets, in query order, when recording
    pub queried_sets: Option<Vec<u64>>,
}

impl ExplorationTrace {
    fn new(start: u64, record: bool) -> Self {
        Self {
            start,
            visited: Vec::new(),
            live: Vec::new(),
            touched: vec![start],
            queried: 0,
            halt_reason: HaltReason::Exhausted,
            steps: Vec::new(),
            queried_sets: record.then(Vec::new),
        }
    }

    /// Dead and live s-sets together, ascending.
    pub fn output(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.visited.iter().chain(&self.live).copied().collect();
        v.sort_unstable();
        v
    }
}

/// Geometry of s-sets and r-sets over `[0, n)`.
struct Space<'a> {
    h: &'a Hypergraph,
    n: u32,
    r: u32,
    s: u32,
    colex: Colex,
    universe: u64,
    /// `C(n-s, r-s)`, the number of r-sets containing a fixed s-set
    around: u64,
}

impl<'a> Space<'a> {
    fn new(h: &'a Hypergraph, s: u32) -> Result<Self, ConnectivityError> {
        let (n, r) = (h.n(), h.r());
        super::ConnectivityVariant::Standard.check(r, s)?;
        Ok(Self {
            h,
            n,
            r,
            s,
            colex: Colex::new(n, r)?,
            universe: binom_u64(n as u64, s as u64)?,
            around: binom_u64((n - s) as u64, (r - s) as u64)?,
        })
    }

    fn check_start(&self, start: u64) -> Result<(), ConnectivityError> {
        if start >= self.universe {
            return Err(ConnectivityError::BadStart { start, size: self.universe });
        }
        Ok(())
    }

    fn set(&self, rank: u64) -> Vec<u32> {
        self.colex.unrank(rank, self.s)
    }

    /// All r-sets containing the sorted `base`, ascending in colex rank.
    fn for_each_superset(&self, base: &[u32], mut f: impl FnMut(&[u32], u64)) {
        let free: Vec<u32> = (0..self.n).filter(|v| base.binary_search(v).is_err()).collect();
        let k = self.r as usize - base.len();
        let mut merged = Vec::with_capacity(self.r as usize);
        // colex order of the free part equals colex order of the union
        for_each_combination(&free, k, |extra| {
            merged.clear();
            let (mut i, mut j) = (0, 0);
            while i < base.len() || j < extra.len() {
                if j == extra.len() || (i < base.len() && base[i] < extra[j]) {
                    merged.push(base[i]);
                    i += 1;
                } else {
                    merged.push(extra[j]);
                    j += 1;
                }
            }
            f(&merged, self.colex.rank(&merged));
        });
    }

    /// True when no s-subset of `f` other than `own` is blocked.
    fn is_fresh(&self, f: &[u32], own: u64, blocked: &impl Fn(u64) -> bool) -> bool {
        let mut fresh = true;
        for_each_combination(f, self.s as usize, |sub| {
            if fresh {
                let k = self.colex.rank(sub);
                if k != own && blocked(k) {
                    fresh = false;
                }
            }
        });
        fresh
    }

    fn s_subsets(&self, f: &[u32]) -> Vec<u64> {
        let mut out = Vec::new();
        for_each_combination(f, self.s as usize, |sub| out.push(self.colex.rank(sub)));
        out
    }

    /// `|{F ⊇ S}| - |{F ⊇ S ∪ T : T a blocker}|`.
    fn count_fresh_complement<'b>(&self, set: &[u32], own: u64, blockers: impl Iterator<Item = (u64, &'b [u32])>) -> u64 {
        let mut bad = HashSet::new();
        let mut union = Vec::with_capacity(2 * self.s as usize);
        for (rank, other) in blockers {
            if rank == own {
                continue;
            }
            union.clear();
            union.extend_from_slice(set);
            union.extend(other.iter().filter(|v| set.binary_search(v).is_err()));
            if union.len() > self.r as usize {
                continue;
            }
            union.sort_unstable();
            self.for_each_superset(&union, |_, k| {
                bad.insert(k);
            });
        }
        self.around - bad.len() as u64
    }

    fn prefer_direct(&self, blockers: usize) -> bool {
        let direct = self.around as u128 * binom(self.r as u64, self.s as u64).unwrap_or(u128::MAX);
        let per_blocker = binom((self.n - self.s - 1) as u64, (self.r - self.s - 1) as u64).unwrap_or(u128::MAX);
        direct <= per_blocker.saturating_mul(blockers as u128 + 1)
    }

    fn use_direct(&self, opts: &ExploreOptions, blockers: usize) -> bool {
        opts.record_queries
            || match opts.strategy {
                CountStrategy::Direct => true,
                CountStrategy::Complement => false,
                CountStrategy::Auto => self.prefer_direct(blockers),
            }
    }
}

/// s-sets seen so far, with their elements kept for complement counting.
#[derive(Default)]
struct SetLog {
    index: HashMap<u64, usize>,
    ranks: Vec<u64>,
    elems: Vec<u32>,
}

impl SetLog {
    fn insert(&mut self, rank: u64, set: &[u32]) -> bool {
        if self.index.contains_key(&rank) {
            return false;
        }
        self.index.insert(rank, self.ranks.len());
        self.ranks.push(rank);
        self.elems.extend_from_slice(set);
        true
    }

    fn contains(&self, rank: u64) -> bool {
        self.index.contains_key(&rank)
    }

    fn position(&self, rank: u64) -> Option<usize> {
        self.index.get(&rank).copied()
    }

    fn len(&self) -> usize {
        self.ranks.len()
    }

    fn iter_prefix(&self, len: usize, s: usize) -> impl Iterator<Item = (u64, &[u32])> {
        self.ranks[..len].iter().copied().zip(self.elems.chunks_exact(s))
    }
}

/// Global state of the Graph branching process across components.
struct Dfs<'a> {
    space: Space<'a>,
    opts: ExploreOptions,
    expanded: SetLog,
    touched: HashSet<u64>,
}

impl<'a> Dfs<'a> {
    fn new(h: &'a Hypergraph, s: u32, opts: ExploreOptions) -> Result<Self, ConnectivityError> {
        Ok(Self { space: Space::new(h, s)?, opts, expanded: SetLog::default(), touched: HashSet::new() })
    }

    fn explore(&mut self, start: u64) -> ExplorationTrace {
        let sp = &self.space;
        let mut trace = ExplorationTrace::new(start, self.opts.record_queries);
        self.touched.insert(start);
        let mut live = vec![start];
        while let Some(cur) = live.pop() {
            trace.visited.push(cur);
            let set = sp.set(cur);
            let expanded = &self.expanded;
            let blocked = |k: u64| expanded.contains(k);
            let mut found: Vec<(usize, u64)> = Vec::new();
            let queried;
            if sp.use_direct(&self.opts, expanded.len()) {
                let mut q = 0;
                let rec = &mut trace.queried_sets;
                sp.for_each_superset(&set, |f, k| {
                    if sp.is_fresh(f, cur, &blocked) {
                        q += 1;
                        if let Some(log) = rec.as_mut() {
                            log.push(k);
                        }
                        if let Some(i) = sp.h.position_of_rank(k) {
                            found.push((i, k));
                        }
                    }
                });
                queried = q;
            } else {
                queried = sp.count_fresh_complement(&set, cur, expanded.iter_prefix(expanded.len(), sp.s as usize));
                for i in sp.h.edges_containing_idx(&set) {
                    if sp.is_fresh(sp.h.edge(i), cur, &blocked) {
                        found.push((i, sp.h.edge_rank(i)));
                    }
                }
            }
            self.expanded.insert(cur, &set);
            let touched_before = trace.touched.len();
            let mut edges = Vec::with_capacity(found.len());
            for (i, k) in found {
                let mut new_sets = 0;
                for sub in sp.s_subsets(sp.h.edge(i)) {
                    if self.touched.insert(sub) {
                        live.push(sub);
                        trace.touched.push(sub);
                        new_sets += 1;
                    }
                }
                edges.push(DiscoveredEdge { edge: i, rank: k, new_sets });
            }
            trace.queried += queried;
            trace.steps.push(ExpansionStep {
                set: cur,
                family: queried,
                queried,
                touched_before,
                edges,
            });
        }
        trace
    }
}

/// Explores the standard component of `start` with the Graph branching process.
pub fn explore_component_dfs(h: &Hypergraph, s: u32, start: u64) -> Result<ExplorationTrace, ConnectivityError> {
    explore_component_dfs_with(h, s, start, ExploreOptions::default())
}

pub fn explore_component_dfs_with(
    h: &Hypergraph,
    s: u32,
    start: u64,
    opts: ExploreOptions,
) -> Result<ExplorationTrace, ConnectivityError> {
    let mut dfs = Dfs::new(h, s, opts)?;
    dfs.space.check_start(start)?;
    Ok(dfs.explore(start))
}

/// Runs the Graph branching process to completion: one trace per component,
/// each started at the lowest-ranked s-set not yet visited.
pub fn graph_branching_process(
    h: &Hypergraph,
    s: u32,
    opts: ExploreOptions,
) -> Result<Vec<ExplorationTrace>, ConnectivityError> {
    let mut dfs = Dfs::new(h, s, opts)?;
    let universe = dfs.space.universe;
    if universe > DEFAULT_INDEX_SPACE_CAP {
        return Err(ConnectivityError::Capacity { size: universe as u128, cap: DEFAULT_INDEX_SPACE_CAP });
    }
    let mut traces = Vec::new();
    for start in 0..universe {
        if !dfs.touched.contains(&start) {
            traces.push(dfs.explore(start));
        }
    }
    Ok(traces)
}

/// The New Search: before expanding the top live s-set `S`, count the family
/// of r-sets `F ⊇ S` containing no other live or dead s-set; halt if it is
/// smaller than `(1-ε) C(n, r-s)`, otherwise query it.
///
/// The family is consumed in ascending rank and stays current while it is
/// being queried: once an edge adds new live s-sets, later members that
/// contain one of them are dropped unqueried. Every discovered edge
/// therefore contributes exactly `C(r, s) - 1` new s-sets.
pub fn new_search(
    h: &Hypergraph,
    s: u32,
    start: u64,
    epsilon: f64,
) -> Result<ExplorationTrace, ConnectivityError> {
    new_search_with(h, s, start, epsilon, ExploreOptions::default())
}

pub fn new_search_with(
    h: &Hypergraph,
    s: u32,
    start: u64,
    epsilon: f64,
    opts: ExploreOptions,
) -> Result<ExplorationTrace, ConnectivityError> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(ConnectivityError::Comb(crate::combinatorics::CombError::Invalid(format!(
            "epsilon = {epsilon} must lie in (0, 1]"
        ))));
    }
    let sp = Space::new(h, s)?;
    sp.check_start(start)?;
    let s_us = s as usize;
    let halt_below = (1.0 - epsilon) * binom(sp.n as u64, (sp.r - s) as u64)? as f64;

    let mut trace = ExplorationTrace::new(start, opts.record_queries);
    let mut touched = SetLog::default();
    touched.insert(start, &sp.set(start));
    let mut live = vec![start];

    while let Some(&cur) = live.last() {
        let set = sp.set(cur);
        let snapshot = touched.len();
        let seen_before = |k: u64| touched.position(k).is_some_and(|i| i < snapshot);
        let direct = sp.use_direct(&opts, snapshot);
        let family = if direct {
            let mut c = 0;
            sp.for_each_superset(&set, |f, _| {
                if sp.is_fresh(f, cur, &seen_before) {
                    c += 1;
                }
            });
            c
        } else {
            sp.count_fresh_complement(&set, cur, touched.iter_prefix(snapshot, s_us))
        };
        if (family as f64) < halt_below {
            trace.halt_reason = HaltReason::EpsilonHalt;
            break;
        }
        live.pop();
        trace.visited.push(cur);

        let mut edges = Vec::new();
        let mut queried = 0u64;
        let discover = |i: usize, k: u64, touched: &mut SetLog, live: &mut Vec<u64>, trace: &mut ExplorationTrace| {
            let f = sp.h.edge(i);
            let mut new_sets = 0;
            for_each_combination(f, s_us, |sub| {
                let sk = sp.colex.rank(sub);
                if sk != cur && touched.insert(sk, sub) {
                    live.push(sk);
                    trace.touched.push(sk);
                    new_sets += 1;
                }
            });
            DiscoveredEdge { edge: i, rank: k, new_sets }
        };

        if direct {
            // materialize the family first: membership must use the snapshot
            let mut members = Vec::new();
            sp.for_each_superset(&set, |f, k| {
                if sp.is_fresh(f, cur, &seen_before) {
                    members.push(k);
                }
            });
            let mut f = vec![0u32; sp.r as usize];
            for k in members {
                sp.colex.unrank_into(k, &mut f);
                let now = |x: u64| touched.contains(x);
                if !sp.is_fresh(&f, cur, &now) {
                    continue;
                }
                queried += 1;
                if let Some(log) = trace.queried_sets.as_mut() {
                    log.push(k);
                }
                if let Some(i) = sp.h.position_of_rank(k) {
                    edges.push(discover(i, k, &mut touched, &mut live, &mut trace));
                }
            }
        } else {
            let candidates: Vec<usize> = sp
                .h
                .edges_containing_idx(&set)
                .into_iter()
                .filter(|&i| sp.is_fresh(sp.h.edge(i), cur, &seen_before))
                .collect();
            let mut dropped: HashSet<u64> = HashSet::new();
            let mut union = Vec::with_capacity(2 * s_us);
            for i in candidates {
                let k = sp.h.edge_rank(i);
                if dropped.contains(&k) {
                    continue;
                }
                let before = touched.len();
                edges.push(discover(i, k, &mut touched, &mut live, &mut trace));
                // later family members containing a newly live s-set leave the family
                for j in before..touched.len() {
                    let other = &touched.elems[j * s_us..(j + 1) * s_us];
                    union.clear();
                    union.extend_from_slice(&set);
                    union.extend(other.iter().filter(|v| set.binary_search(v).is_err()));
                    if union.len() > sp.r as usize {
                        continue;
                    }
                    union.sort_unstable();
                    sp.for_each_superset(&union, |g, gk| {
                        if gk > k && sp.is_fresh(g, cur, &|x| touched.position(x).is_some_and(|p| p < snapshot)) {
                            dropped.insert(gk);
                        }
                    });
                }
            }
            queried = family - dropped.len() as u64;
        }
        trace.queried += queried;
        trace.steps.push(ExpansionStep { set: cur, family, queried, touched_before: snapshot, edges });
    }
    trace.live = live;
    Ok(trace)
}
