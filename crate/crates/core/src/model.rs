//! r-uniform hypergraphs and the binomial random model `H^r(n, p)`.
//!
//! Randomness comes from `ChaCha8Rng` seeded with `seed_from_u64`; the same
//! `SampleSpec` always yields the same edge set.

use std::collections::HashSet;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use thiserror::Error;

use crate::combinatorics::{binom, CombError, Colex};

/// `auto` enumerates every r-set when `C(n, r)` is at most this.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("capacity error: {0}")]
    Capacity(String),
    #[error("malformed edge list at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// An r-uniform hypergraph on `[0, n)` with edges kept in ascending colex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: u32,
    r: u32,
    /// flattened edges, `r` vertices each
    verts: Vec<u32>,
    /// colex rank of each edge, strictly increasing
    ranks: Vec<u64>,
    /// vertex -> indices of incident edges, ascending
    incidence: Vec<Vec<u32>>,
}

impl Hypergraph {
    /// Builds a hypergraph from sorted r-sets; rejects malformed or duplicate edges.
    pub fn new(n: u32, r: u32, edges: impl IntoIterator<Item = Vec<u32>>) -> Result<Self, ModelError> {
        if r < 2 || r > n {
            return Err(ModelError::Parameter(format!("need 2 <= r <= n, got n={n} r={r}")));
        }
        let colex = Colex::new(n, r)?;
        let mut keyed: Vec<(u64, Vec<u32>)> = Vec::new();
        for e in edges {
            if e.len() != r as usize {
                return Err(ModelError::Parameter(format!("edge {e:?} does not have {r} vertices")));
            }
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ModelError::Parameter(format!("edge {e:?} is not strictly increasing")));
            }
            if e[r as usize - 1] >= n {
                return Err(ModelError::Parameter(format!("edge {e:?} has a vertex >= {n}")));
            }
            keyed.push((colex.rank(&e), e));
        }
        keyed.sort_unstable_by_key(|(k, _)| *k);
        if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(ModelError::Parameter(format!("duplicate edge {:?}", w[0].1)));
        }
        Ok(Self::from_sorted(n, r, keyed))
    }

    fn from_sorted(n: u32, r: u32, keyed: Vec<(u64, Vec<u32>)>) -> Self {
        let mut verts = Vec::with_capacity(keyed.len() * r as usize);
        let mut ranks = Vec::with_capacity(keyed.len());
        let mut incidence = vec![Vec::new(); n as usize];
        for (i, (k, e)) in keyed.into_iter().enumerate() {
            for &v in &e {
                incidence[v as usize].push(i as u32);
            }
            verts.extend_from_slice(&e);
            ranks.push(k);
        }
        Self { n, r, verts, ranks, incidence }
    }

    /// Edges given by colex ranks (need not be sorted, must be distinct and valid).
    fn from_ranks(n: u32, r: u32, colex: &Colex, mut ranks: Vec<u64>) -> Self {
        ranks.sort_unstable();
        let keyed = ranks.into_iter().map(|k| (k, colex.unrank(k, r))).collect();
        Self::from_sorted(n, r, keyed)
    }

    pub fn empty(n: u32, r: u32) -> Result<Self, ModelError> {
        Self::new(n, r, std::iter::empty())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn num_edges(&self) -> usize {
        self.ranks.len()
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        let r = self.r as usize;
        &self.verts[i * r..(i + 1) * r]
    }

    pub fn edge_rank(&self, i: usize) -> u64 {
        self.ranks[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.verts.chunks_exact(self.r as usize)
    }

    pub fn incident(&self, v: u32) -> &[u32] {
        &self.incidence[v as usize]
    }

    /// Whether the r-set with this colex rank is an edge.
    pub fn contains_rank(&self, rank: u64) -> bool {
        self.ranks.binary_search(&rank).is_ok()
    }

    /// Edge index of the r-set with this colex rank, if it is an edge.
    pub fn position_of_rank(&self, rank: u64) -> Option<usize> {
        self.ranks.binary_search(&rank).ok()
    }

    /// Indices of the edges containing `set`, ascending (hence in colex order).
    ///
    /// Scans the shortest incidence list among the vertices of `set`.
    pub fn edges_containing_idx(&self, set: &[u32]) -> Vec<usize> {
        if set.is_empty() {
            return (0..self.num_edges()).collect();
        }
        if set.iter().any(|&v| v >= self.n) {
            return Vec::new();
        }
        let pivot = *set
            .iter()
            .min_by_key(|&&v| self.incidence[v as usize].len())
            .expect("nonempty");
        self.incidence[pivot as usize]
            .iter()
            .map(|&i| i as usize)
            .filter(|&i| is_subset(set, self.edge(i)))
            .collect()
    }

    /// The edges `F` with `set ⊆ F`, in colex order.
    pub fn edges_containing(&self, set: &[u32]) -> Vec<&[u32]> {
        self.edges_containing_idx(set).into_iter().map(|i| self.edge(i)).collect()
    }
}

/// Sorted-merge subset test.
pub(crate) fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMethod {
    /// One uniform variate per r-set, in colex order.
    Enumerate,
    /// `M ~ Binomial(C(n,r), p)`, then `M` distinct uniform r-sets.
    #[serde(alias = "count-then-sample")]
    CountThenSample,
    #[default]
    Auto,
}

impl FromStr for SampleMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "enumerate" => Ok(Self::Enumerate),
            "count-then-sample" | "count_then_sample" => Ok(Self::CountThenSample),
            "auto" => Ok(Self::Auto),
            other => Err(format!("unknown sampling method `{other}`")),
        }
    }
}

impl fmt::Display for SampleMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Enumerate => "enumerate",
            Self::CountThenSample => "count-then-sample",
            Self::Auto => "auto",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpec {
    pub n: u32,
    pub r: u32,
    pub p: f64,
    pub seed: u64,
    pub method: SampleMethod,
    pub enumeration_cap: u64,
}

impl SampleSpec {
    pub fn new(n: u32, r: u32, p: f64, seed: u64) -> Self {
        Self { n, r, p, seed, method: SampleMethod::Auto, enumeration_cap: DEFAULT_ENUMERATION_CAP }
    }

    pub fn with_method(mut self, method: SampleMethod) -> Self {
        self.method = method;
        self
    }

    /// The method actually used once `Auto` is resolved.
    pub fn resolved_method(&self) -> Result<SampleMethod, ModelError> {
        let total = binom(self.n as u64, self.r as u64)?;
        Ok(match self.method {
            SampleMethod::Auto if total <= self.enumeration_cap as u128 => SampleMethod::Enumerate,
            SampleMethod::Auto => SampleMethod::CountThenSample,
            m => m,
        })
    }
}

/// Draws `H^r(n, p)`.
pub fn sample_hypergraph(spec: &SampleSpec) -> Result<Hypergraph, ModelError> {
    let SampleSpec { n, r, p, seed, .. } = *spec;
    if r < 2 || r > n {
        return Err(ModelError::Parameter(format!("need 2 <= r <= n, got n={n} r={r}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(ModelError::Parameter(format!("p = {p} is not a probability")));
    }
    let total = binom(n as u64, r as u64)?;
    let total = u64::try_from(total)
        .map_err(|_| ModelError::Capacity(format!("C({n},{r}) does not fit in 64 bits")))?;
    let colex = Colex::new(n, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ranks = match spec.resolved_method()? {
        SampleMethod::Enumerate => {
            if total > spec.enumeration_cap {
                return Err(ModelError::Capacity(format!(
                    "enumerate needs C({n},{r}) = {total} <= {}",
                    spec.enumeration_cap
                )));
            }
            // Comparing a per-r-set variate with p couples samples across p.
            (0..total).filter(|_| rng.random::<f64>() < p).collect()
        }
        SampleMethod::CountThenSample => {
            let m = Binomial::new(total, p)
                .map_err(|e| ModelError::Parameter(e.to_string()))?
                .sample(&mut rng);
            let mut chosen = HashSet::with_capacity(m as usize);
            let mut ranks = Vec::with_capacity(m as usize);
            while (ranks.len() as u64) < m {
                let k = rng.random_range(0..total);
                if chosen.insert(k) {
                    ranks.push(k);
                }
            }
            ranks
        }
        SampleMethod::Auto => unreachable!("resolved above"),
    };
    Ok(Hypergraph::from_ranks(n, r, &colex, ranks))
}

/// Writes the `n r m` header followed by one edge per line.
pub fn write_edge_list(h: &Hypergraph, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{} {} {}", h.n, h.r, h.num_edges())?;
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(u32::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn read_edge_list(input: impl BufRead) -> Result<Hypergraph, ModelError> {
    let bad = |line: usize, msg: String| ModelError::Parse { line, msg };
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| bad(1, "missing header".into()))?;
    let header = header?;
    let fields: Vec<u64> = header
        .split_whitespace()
        .map(|t| t.parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|e| bad(1, format!("header `{header}`: {e}")))?;
    let [n, r, m] = fields[..] else {
        return Err(bad(1, format!("header must be `n r m`, got `{header}`")));
    };
    let n = u32::try_from(n).map_err(|_| bad(1, format!("n = {n} too large")))?;
    let r = u32::try_from(r).map_err(|_| bad(1, format!("r = {r} too large")))?;
    if r < 2 || r > n {
        return Err(bad(1, format!("need 2 <= r <= n, got n={n} r={r}")));
    }
    let mut edges = Vec::new();
    for (no, line) in lines.by_ref() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        if edges.len() as u64 == m {
            return Err(bad(no, format!("more than m = {m} edge lines")));
        }
        let e: Vec<u32> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| bad(no, format!("`{line}`: {e}")))?;
        if e.len() != r as usize {
            return Err(bad(no, format!("expected {r} vertices, got {}", e.len())));
        }
        if e.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad(no, format!("vertices not strictly increasing: `{line}`")));
        }
        if e[e.len() - 1] >= n {
            return Err(bad(no, format!("vertex out of range [0, {n}): `{line}`")));
        }
        edges.push(e);
    }
    if edges.len() as u64 != m {
        return Err(bad(0, format!("header promises {m} edges, found {}", edges.len())));
    }
    Hypergraph::new(n, r, edges).map_err(|e| match e {
        ModelError::Parameter(msg) => bad(0, msg),
        other => other,
    })
}
