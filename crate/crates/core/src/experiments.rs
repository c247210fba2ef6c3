//! Seeded Monte Carlo sweeps over `(n, c)` grids.
//!
//! Each trial samples `H^r(n, p)` at `p = c / C(n, r-s)`, labels its s-th-order
//! components with union-find, and records the component statistics next to
//! the predicted giant fraction.
//!
//! Trial seeds are `splitmix64(splitmix64(splitmix64(master) ^ point) ^ trial)`,
//! so results do not depend on how trials are scheduled across threads.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::branching::{giant_fraction, offspring_fold, BranchingError, DEFAULT_TOLERANCE};
use crate::combinatorics::{binom, falling_factorial, CombError, DEFAULT_INDEX_SPACE_CAP};
use crate::connectivity::{
    component_size_stats, components_union_find_capped, ConnectivityError, ConnectivityVariant, SizeStats,
};
use crate::model::{sample_hypergraph, Hypergraph, ModelError, SampleMethod, SampleSpec, DEFAULT_ENUMERATION_CAP};

pub const DEFAULT_K_FACTOR: f64 = 20.0;
pub const DEFAULT_GAP_RATIO: f64 = 0.05;

pub const CSV_HEADER: &str = "r,s,n,c,p,variant,trial,edges,largest,second,components,pred_z,pred_giant,elapsed_ms";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid sweep config: {0}")]
    Config(String),
    #[error("cannot parse sweep config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("grid point {index} (n={n}, c={c}): {source}")]
    Point {
        index: usize,
        n: u32,
        c: f64,
        #[source]
        source: PointError,
    },
    #[error(transparent)]
    Branching(#[from] BranchingError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ExperimentError {
    /// True when a grid point exceeds an index-space or enumeration cap.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Self::Point { source, .. } if source.is_capacity())
    }
}

#[derive(Debug, Error)]
pub enum PointError {
    #[error("capacity: {0}")]
    Capacity(String),
    #[error("parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
    #[error(transparent)]
    Comb(#[from] CombError),
}

impl PointError {
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Self::Capacity(_)
                | Self::Model(ModelError::Capacity(_))
                | Self::Connectivity(ConnectivityError::Capacity { .. })
                | Self::Comb(CombError::CapExceeded { .. } | CombError::Overflow(_))
        )
    }
}

fn default_index_space_cap() -> u64 {
    DEFAULT_INDEX_SPACE_CAP
}

fn default_enumeration_cap() -> u64 {
    DEFAULT_ENUMERATION_CAP
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub r: u32,
    pub s: u32,
    #[serde(default)]
    pub variant: ConnectivityVariant,
    pub n_list: Vec<u32>,
    pub c_list: Vec<f64>,
    pub trials: u32,
    pub master_seed: u64,
    #[serde(default = "default_index_space_cap")]
    pub index_space_cap: u64,
    #[serde(default = "default_enumeration_cap")]
    pub enumeration_cap: u64,
    #[serde(default)]
    pub method: SampleMethod,
    /// Fill `elapsed_ms`. Off by default so output stays byte-reproducible.
    #[serde(default)]
    pub timing: bool,
}

impl SweepConfig {
    pub fn new(r: u32, s: u32, variant: ConnectivityVariant, n_list: Vec<u32>, c_list: Vec<f64>, trials: u32, master_seed: u64) -> Self {
        Self {
            r,
            s,
            variant,
            n_list,
            c_list,
            trials,
            master_seed,
            index_space_cap: DEFAULT_INDEX_SPACE_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            method: SampleMethod::Auto,
            timing: false,
        }
    }

    pub fn with_method(mut self, method: SampleMethod) -> Self {
        self.method = method;
        self
    }

    pub fn from_toml_str(text: &str) -> Result<Self, ExperimentError> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, ExperimentError> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    /// Grid points in sweep order: `n` outer, `c` inner.
    pub fn points(&self) -> Vec<(u32, f64)> {
        self.n_list.iter().flat_map(|&n| self.c_list.iter().map(move |&c| (n, c))).collect()
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |msg: String| Err(ExperimentError::Config(msg));
        if !self.variant.allows(self.r, self.s) {
            return bad(format!("variant {} does not allow r={}, s={}", self.variant, self.r, self.s));
        }
        if self.trials < 1 {
            return bad("trials must be at least 1".into());
        }
        if self.n_list.is_empty() || self.c_list.is_empty() {
            return bad("n_list and c_list must be nonempty".into());
        }
        if let Some(c) = self.c_list.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
            return bad(format!("c = {c} must be a nonnegative number"));
        }
        for (index, (n, c)) in self.points().into_iter().enumerate() {
            self.check_point(n, c).map_err(|source| ExperimentError::Point { index, n, c, source })?;
        }
        Ok(())
    }

    fn check_point(&self, n: u32, c: f64) -> Result<f64, PointError> {
        if n < self.r {
            return Err(PointError::Parameter(format!("n = {n} is smaller than r = {}", self.r)));
        }
        let universe = self.variant.universe_size(n, self.s)?;
        if universe > self.index_space_cap as u128 {
            return Err(PointError::Capacity(format!(
                "universe of {universe} s-sets exceeds index-space cap {}",
                self.index_space_cap
            )));
        }
        let total = binom(n as u64, self.r as u64)?;
        if total > u64::MAX as u128 {
            return Err(PointError::Capacity(format!("C({n},{}) does not fit in 64 bits", self.r)));
        }
        if self.method == SampleMethod::Enumerate && total > self.enumeration_cap as u128 {
            return Err(PointError::Capacity(format!(
                "enumerating C({n},{}) = {total} r-sets exceeds cap {}",
                self.r, self.enumeration_cap
            )));
        }
        let p = edge_probability(n, self.r, self.s, c)?;
        if p > 1.0 {
            return Err(PointError::Parameter(format!("c = {c} gives p = {p} > 1")));
        }
        Ok(p)
    }
}

/// `p = c / C(n, r-s)`.
pub fn edge_probability(n: u32, r: u32, s: u32, c: f64) -> Result<f64, CombError> {
    Ok(c / binom(n as u64, (r - s) as u64)? as f64)
}

/// Critical normalized mean `c*` for `p = c / C(n, r-s)`.
pub fn threshold(r: u32, s: u32, variant: ConnectivityVariant) -> Result<f64, BranchingError> {
    if !variant.allows(r, s) {
        return Err(BranchingError::Domain(format!("variant {variant} does not allow r={r}, s={s}")));
    }
    let m = match offspring_fold(r, s, variant)? {
        Some(m) => m as u128,
        None => falling_factorial(r as u64, s as u64)? - 1,
    };
    Ok(1.0 / m as f64)
}

/// Predicted giant fraction, or `None` where no equation is available.
pub fn predicted_z(r: u32, s: u32, c: f64, variant: ConnectivityVariant) -> Result<Option<f64>, BranchingError> {
    match offspring_fold(r, s, variant)? {
        Some(_) => giant_fraction(r, s, c, variant, DEFAULT_TOLERANCE).map(Some),
        None => Ok(None),
    }
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(master: u64, point: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ point) ^ trial)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub r: u32,
    pub s: u32,
    pub n: u32,
    pub c: f64,
    pub p: f64,
    pub variant: ConnectivityVariant,
    pub point: usize,
    pub trial: u32,
    pub edges: u64,
    pub largest: u64,
    pub second: u64,
    pub components: u64,
    pub pred_z: Option<f64>,
    pub pred_giant: Option<f64>,
    pub elapsed_ms: Option<f64>,
}

impl SweepRecord {
    pub fn universe_size(&self) -> u128 {
        self.variant.universe_size(self.n, self.s).expect("checked when the sweep ran")
    }

    pub fn largest_fraction(&self) -> f64 {
        self.largest as f64 / self.universe_size() as f64
    }
}

/// Edge count and component statistics of one sample.
pub fn measure(h: &Hypergraph, s: u32, variant: ConnectivityVariant, cap: u64) -> Result<(u64, SizeStats), ConnectivityError> {
    let labeling = components_union_find_capped(h, s, variant, cap)?;
    Ok((h.num_edges() as u64, component_size_stats(&labeling)))
}

pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>, ExperimentError> {
    config.validate()?;
    let points = config.points();
    let mut preds = Vec::with_capacity(points.len());
    for &(n, c) in &points {
        let z = predicted_z(config.r, config.s, c, config.variant)?;
        let universe = config.variant.universe_size(n, config.s).expect("validated") as f64;
        preds.push((z, z.map(|z| z * universe)));
    }
    let jobs: Vec<(usize, u32)> =
        (0..points.len()).flat_map(|i| (0..config.trials).map(move |t| (i, t))).collect();
    jobs.into_par_iter()
        .map(|(index, trial)| {
            let (n, c) = points[index];
            run_trial(config, index, trial, preds[index])
                .map_err(|source| ExperimentError::Point { index, n, c, source })
        })
        .collect()
}

/// Runs the sweep on a dedicated pool of `threads` workers (0 = rayon default).
pub fn run_sweep_with_threads(config: &SweepConfig, threads: usize) -> Result<Vec<SweepRecord>, ExperimentError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ExperimentError::Config(format!("thread pool: {e}")))?;
    pool.install(|| run_sweep(config))
}

fn run_trial(
    config: &SweepConfig,
    index: usize,
    trial: u32,
    (pred_z, pred_giant): (Option<f64>, Option<f64>),
) -> Result<SweepRecord, PointError> {
    let clock = Instant::now();
    let (n, c) = (config.n_list[index / config.c_list.len()], config.c_list[index % config.c_list.len()]);
    let p = config.check_point(n, c)?;
    let mut spec = SampleSpec::new(n, config.r, p, trial_seed(config.master_seed, index as u64, trial as u64))
        .with_method(config.method);
    spec.enumeration_cap = config.enumeration_cap;
    let h = sample_hypergraph(&spec)?;
    let (edges, st) = measure(&h, config.s, config.variant, config.index_space_cap)?;
    Ok(SweepRecord {
        r: config.r,
        s: config.s,
        n,
        c,
        p,
        variant: config.variant,
        point: index,
        trial,
        edges,
        largest: st.largest,
        second: st.second_largest,
        components: st.count,
        pred_z,
        pred_giant,
        elapsed_ms: config.timing.then(|| clock.elapsed().as_secs_f64() * 1e3),
    })
}

/// `%g`-style rendering with 6 significant digits.
pub fn format_g6(x: f64) -> String {
    format_g(x, 6)
}

/// `%.{digits}g`: shortest of fixed or scientific notation, trailing zeros dropped.
pub fn format_g(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.*e}", digits - 1);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mant), exp.abs())
    } else {
        trim(&format!("{x:.*}", (digits as i32 - 1 - exp) as usize))
    }
}

fn opt_g6(x: Option<f64>) -> String {
    x.map(format_g6).unwrap_or_default()
}

pub fn write_sweep_csv(records: &[SweepRecord], mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for rec in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            rec.r,
            rec.s,
            rec.n,
            format_g6(rec.c),
            format_g6(rec.p),
            rec.variant,
            rec.trial,
            rec.edges,
            rec.largest,
            rec.second,
            rec.components,
            opt_g6(rec.pred_z),
            opt_g6(rec.pred_giant),
            opt_g6(rec.elapsed_ms),
        )?;
    }
    Ok(())
}

/// Per-point aggregates over trials.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSummary {
    pub point: usize,
    pub n: u32,
    pub c: f64,
    pub trials: u32,
    pub mean_fraction: f64,
    pub max_largest: u64,
    /// largest `second / largest` over trials
    pub max_gap: f64,
    pub pred_z: Option<f64>,
    pub universe_size: u128,
}

pub fn summarize(records: &[SweepRecord]) -> Vec<PointSummary> {
    let mut by_point: BTreeMap<usize, Vec<&SweepRecord>> = BTreeMap::new();
    for rec in records {
        by_point.entry(rec.point).or_default().push(rec);
    }
    by_point
        .into_iter()
        .map(|(point, recs)| {
            let first = recs[0];
            let trials = recs.len() as u32;
            PointSummary {
                point,
                n: first.n,
                c: first.c,
                trials,
                mean_fraction: recs.iter().map(|r| r.largest_fraction()).sum::<f64>() / trials as f64,
                max_largest: recs.iter().map(|r| r.largest).max().unwrap_or(0),
                max_gap: recs
                    .iter()
                    .map(|r| if r.largest == 0 { 0.0 } else { r.second as f64 / r.largest as f64 })
                    .fold(0.0, f64::max),
                pred_z: first.pred_z,
                universe_size: first.universe_size(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogScale {
    /// `ln n`
    Vertices,
    /// `ln` of the number of s-sets (or s-tuples)
    Universe,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub point: usize,
    pub n: u32,
    pub c: f64,
    pub pass: bool,
    /// the observed quantity compared against the bound
    pub observed: f64,
    pub bound: f64,
}

/// Per point: every trial's largest component is at most `k_factor * ln n`.
pub fn subcritical_verdict(records: &[SweepRecord], k_factor: f64) -> Vec<Verdict> {
    subcritical_verdict_scaled(records, k_factor, LogScale::Vertices)
}

pub fn subcritical_verdict_scaled(records: &[SweepRecord], k_factor: f64, scale: LogScale) -> Vec<Verdict> {
    summarize(records)
        .into_iter()
        .map(|p| {
            let base = match scale {
                LogScale::Vertices => p.n as f64,
                LogScale::Universe => p.universe_size as f64,
            };
            let bound = k_factor * base.ln();
            Verdict { point: p.point, n: p.n, c: p.c, pass: p.max_largest as f64 <= bound, observed: p.max_largest as f64, bound }
        })
        .collect()
}

/// Per point: every trial has `second / largest <= gap_ratio`.
pub fn uniqueness_verdict(records: &[SweepRecord], gap_ratio: f64) -> Vec<Verdict> {
    summarize(records)
        .into_iter()
        .map(|p| Verdict { point: p.point, n: p.n, c: p.c, pass: p.max_gap <= gap_ratio, observed: p.max_gap, bound: gap_ratio })
        .collect()
}
