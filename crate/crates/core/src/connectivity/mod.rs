//! s-th-order connectivity of r-uniform hypergraphs.
//!
//! Two s-sets are adjacent when some edge covers them according to the
//! [`ConnectivityVariant`]; components are the classes of the transitive
//! closure. [`components_union_find`] labels every s-set at once, while the
//! exploration engines in [`explore`] follow the stack-based search one
//! component at a time.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::combinatorics::{
    falling_factorial, for_each_arrangement, for_each_combination, rank_tuple, CombError, Colex,
};
use crate::model::ModelError;

pub mod explore;
mod union_find;

pub use explore::{
    explore_component_dfs, explore_component_dfs_with, graph_branching_process, new_search,
    new_search_with, CountStrategy, DiscoveredEdge,
    ExploreOptions, ExpansionStep, ExplorationTrace, HaltReason,
};
pub use union_find::{
    component_size_stats, components_union_find, components_union_find_capped, write_component_dump, ComponentLabeling,
    DisjointSets, SizeStats,
};

#[derive(Debug, Error)]
pub enum ConnectivityError {
    #[error("variant {variant} does not allow s = {s} with r = {r}")]
    Incompatible { variant: ConnectivityVariant, r: u32, s: u32 },
    #[error("universe of {size} elements exceeds the index-space cap {cap}")]
    Capacity { size: u128, cap: u64 },
    #[error("start index {start} outside universe of size {size}")]
    BadStart { start: u64, size: u64 },
    #[error("{0} is only defined for the standard variant")]
    StandardOnly(&'static str),
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectivityVariant {
    /// `S ∪ S' ⊆ F`
    #[default]
    Standard,
    /// `S ∩ S' = ∅` and `S ∪ S' ⊆ F`, for `s <= r/2`
    LooseSet,
    /// `S ∪ S' = F`, for `r/2 < s < r`
    TightSet,
    /// distinct-coordinate s-tuples with disjoint supports inside `F`, for `s <= r/2`
    LooseTuple,
}

impl ConnectivityVariant {
    pub const ALL: [ConnectivityVariant; 4] =
        [Self::Standard, Self::LooseSet, Self::TightSet, Self::LooseTuple];

    pub fn name(self) -> &'static str {
        match self {
            Self::Standard => "standard",
            Self::LooseSet => "loose_set",
            Self::TightSet => "tight_set",
            Self::LooseTuple => "loose_tuple",
        }
    }

    pub fn is_tuple(self) -> bool {
        self == Self::LooseTuple
    }

    pub fn allows(self, r: u32, s: u32) -> bool {
        if s == 0 || s >= r {
            return false;
        }
        match self {
            Self::Standard => true,
            Self::LooseSet | Self::LooseTuple => 2 * s <= r,
            Self::TightSet => 2 * s > r,
        }
    }

    pub fn check(self, r: u32, s: u32) -> Result<(), ConnectivityError> {
        if self.allows(r, s) {
            Ok(())
        } else {
            Err(ConnectivityError::Incompatible { variant: self, r, s })
        }
    }

    /// Number of s-sets (or s-tuples) components are taken over.
    pub fn universe_size(self, n: u32, s: u32) -> Result<u128, CombError> {
        if self.is_tuple() {
            falling_factorial(n as u64, s as u64)
        } else {
            crate::combinatorics::binom(n as u64, s as u64)
        }
    }
}

impl fmt::Display for ConnectivityVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConnectivityVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s || v.name().replace('_', "-") == s)
            .ok_or_else(|| format!("unknown connectivity variant `{s}`"))
    }
}

/// Unordered pairs `(a, b)`, `a < b`, of ranks that one edge `F` makes adjacent.
///
/// Set variants use colex ranks of s-subsets; `LooseTuple` uses tuple ranks
/// over `[0, n)`, which is why `n` is needed.
pub fn adjacent_within_edge(
    edge: &[u32],
    n: u32,
    variant: ConnectivityVariant,
    s: u32,
) -> Result<Vec<(u64, u64)>, ConnectivityError> {
    let r = edge.len() as u32;
    variant.check(r, s)?;
    let colex = Colex::new(n, s)?;
    let mut pairs = Vec::new();
    pairs_within_edge(edge, n, variant, s, &colex, &mut |a, b| pairs.push((a.min(b), a.max(b))))?;
    pairs.sort_unstable();
    Ok(pairs)
}

/// Calls `emit` once per adjacent unordered pair inside `edge`.
pub(crate) fn pairs_within_edge(
    edge: &[u32],
    n: u32,
    variant: ConnectivityVariant,
    s: u32,
    colex: &Colex,
    emit: &mut dyn FnMut(u64, u64),
) -> Result<(), ConnectivityError> {
    let s_us = s as usize;
    match variant {
        ConnectivityVariant::Standard => {
            let mut ranks = Vec::new();
            for_each_combination(edge, s_us, |sub| ranks.push(colex.rank(sub)));
            for (i, &a) in ranks.iter().enumerate() {
                for &b in &ranks[i + 1..] {
                    emit(a, b);
                }
            }
        }
        ConnectivityVariant::LooseSet => {
            let mut rest = Vec::with_capacity(edge.len());
            for_each_combination(edge, s_us, |sub| {
                let a = colex.rank(sub);
                rest.clear();
                rest.extend(edge.iter().filter(|v| !sub.contains(v)));
                for_each_combination(&rest, s_us, |other| {
                    let b = colex.rank(other);
                    if a < b {
                        emit(a, b);
                    }
                });
            });
        }
        ConnectivityVariant::TightSet => {
            // |S ∩ S'| = 2s - r: pick the overlap, then split the remainder in half.
            let overlap = 2 * s_us - edge.len();
            let half = edge.len() - s_us;
            let mut rest = Vec::with_capacity(edge.len());
            let mut left = Vec::with_capacity(s_us);
            let mut right = Vec::with_capacity(s_us);
            for_each_combination(edge, overlap, |common| {
                rest.clear();
                rest.extend(edge.iter().copied().filter(|v| !common.contains(v)));
                let (anchor, others) = rest.split_first().expect("r > s leaves a remainder");
                // the half holding the smallest remaining vertex is the "left" one
                for_each_combination(others, half - 1, |tail| {
                    left.clear();
                    left.extend(common.iter().copied().chain([*anchor]).chain(tail.iter().copied()));
                    left.sort_unstable();
                    right.clear();
                    right.extend(common.iter().copied());
                    right.extend(others.iter().copied().filter(|v| !tail.contains(v)));
                    right.sort_unstable();
                    emit(colex.rank(&left), colex.rank(&right));
                });
            });
        }
        ConnectivityVariant::LooseTuple => {
            let mut rest = Vec::with_capacity(edge.len());
            let mut result = Ok(());
            for_each_arrangement(edge, s_us, |x| {
                let a = match rank_tuple(x, n) {
                    Ok(t) => t.0,
                    Err(e) => {
                        result = Err(e);
                        return;
                    }
                };
                rest.clear();
                rest.extend(edge.iter().filter(|v| !x.contains(v)));
                for_each_arrangement(&rest, s_us, |y| {
                    if let Ok(b) = rank_tuple(y, n) {
                        if a < b.0 {
                            emit(a, b.0);
                        }
                    }
                });
            });
            result?;
        }
    }
    Ok(())
}
