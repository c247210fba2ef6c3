//! Multi-fold Galton–Watson processes.
//!
//! An m-fold offspring variable is `m * K` with `K` Poisson or binomial: every
//! discovered hyperedge brings in a block of `m` new s-sets at once. The
//! process `Y_t = Y_{t-1} - 1 + Z_t`, `Y_0 = 1`, dies out at the first `t`
//! with `Y_t = 0`, and `t` is then the total population.

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::{Binomial, Distribution, Poisson};
use thiserror::Error;

use crate::combinatorics::{binom_u64, CombError};
use crate::connectivity::ConnectivityVariant;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_POPULATION_CAP: u64 = 100_000;

/// Above this mean the sampler hands off to `rand_distr::Poisson`.
const INVERSION_LIMIT: f64 = 30.0;
const FIXED_POINT_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum BranchingError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence for m={m}, c={c} (residual {residual:e})")]
    NonConvergence { m: u32, c: f64, residual: f64 },
    #[error(transparent)]
    Comb(#[from] CombError),
}

/// Fold count `m` and Poisson mean `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchingParams {
    m: u32,
    c: f64,
}

impl BranchingParams {
    pub fn new(m: u32, c: f64) -> Result<Self, BranchingError> {
        if m < 1 {
            return Err(BranchingError::Domain(format!("fold count m = {m} must be >= 1")));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(BranchingError::Domain(format!("mean c = {c} must be positive")));
        }
        Ok(Self { m, c })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `Pr(Z = k)`: `e^{-c} c^{k/m} / (k/m)!` when `m | k`, else 0.
    pub fn pmf(&self, k: u64) -> f64 {
        if k % self.m as u64 != 0 {
            return 0.0;
        }
        let j = k / self.m as u64;
        // log-space keeps large j finite
        let ln = -self.c + j as f64 * self.c.ln() - ln_factorial(j);
        ln.exp()
    }
}

/// Fold count `m`, trial count `N`, success probability `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialParams {
    m: u32,
    trials: u64,
    p: f64,
}

impl BinomialParams {
    pub fn new(m: u32, trials: u64, p: f64) -> Result<Self, BranchingError> {
        if m < 1 {
            return Err(BranchingError::Domain(format!("fold count m = {m} must be >= 1")));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(BranchingError::Domain(format!("p = {p} is not a probability")));
        }
        Ok(Self { m, trials, p })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

fn ln_factorial(j: u64) -> f64 {
    (1..=j).map(|i| (i as f64).ln()).sum()
}

/// Poisson(c) by sequential inversion of the CDF.
pub fn sample_poisson<R: Rng + ?Sized>(c: f64, rng: &mut R) -> u64 {
    if c > INVERSION_LIMIT {
        let d = Poisson::new(c).expect("positive finite mean");
        return d.sample(rng) as u64;
    }
    let u: f64 = rng.random();
    let mut k = 0u64;
    let mut term = (-c).exp();
    let mut cdf = term;
    while u > cdf && term > 0.0 {
        k += 1;
        term *= c / k as f64;
        cdf += term;
    }
    k
}

/// `m * K` with `K ~ Poisson(c)`.
pub fn sample_mfold_poisson<R: Rng + ?Sized>(params: &BranchingParams, rng: &mut R) -> u64 {
    params.m as u64 * sample_poisson(params.c, rng)
}

/// `m * K` with `K ~ Binomial(N, p)`.
pub fn sample_mfold_binomial<R: Rng + ?Sized>(params: &BinomialParams, rng: &mut R) -> u64 {
    let k = Binomial::new(params.trials, params.p).expect("validated p").sample(rng);
    params.m as u64 * k
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PopulationOutcome {
    /// died out with this many nodes, Eve included
    Finite(u64),
    /// still alive after `cap` nodes were explored
    Exceeded(u64),
}

impl PopulationOutcome {
    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }
}

/// Runs `Y_t = Y_{t-1} - 1 + Z_t` from `Y_0 = 1` for at most `cap` steps.
pub fn simulate_total_population<R, F>(mut offspring: F, cap: u64, rng: &mut R) -> PopulationOutcome
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> u64,
{
    assert!(cap >= 1, "population cap must be positive");
    let mut live: u64 = 1;
    for t in 1..=cap {
        live = live - 1 + offspring(rng);
        if live == 0 {
            return PopulationOutcome::Finite(t);
        }
    }
    PopulationOutcome::Exceeded(cap)
}

/// Offspring law of an m-fold process, sampled one node or a batch at a time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OffspringLaw {
    Poisson(BranchingParams),
    Binomial(BinomialParams),
}

impl OffspringLaw {
    pub fn m(&self) -> u32 {
        match self {
            Self::Poisson(p) => p.m,
            Self::Binomial(p) => p.m,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.sample_sum(1, rng)
    }

    /// Total offspring of `k` independent nodes, drawn as a single variate.
    pub fn sample_sum<R: Rng + ?Sized>(&self, k: u64, rng: &mut R) -> u64 {
        match self {
            Self::Poisson(p) => p.m as u64 * sample_poisson(p.c * k as f64, rng),
            Self::Binomial(p) => {
                let trials = p.trials.checked_mul(k).expect("batched trial count fits in u64");
                p.m as u64 * Binomial::new(trials, p.p).expect("validated p").sample(rng)
            }
        }
    }
}

/// Same law as [`simulate_total_population`] with `Y_0 = 1`, but with `y`
/// nodes alive the next `y - 1` steps cannot reach zero, so their offspring
/// are drawn as one sum.
pub fn simulate_law_population<R: Rng + ?Sized>(law: &OffspringLaw, cap: u64, rng: &mut R) -> PopulationOutcome {
    assert!(cap >= 1, "population cap must be positive");
    let mut live: u64 = 1;
    let mut t: u64 = 0;
    while t < cap {
        let k = (live - 1).clamp(1, cap - t);
        live = live - k + law.sample_sum(k, rng);
        t += k;
        if live == 0 {
            return PopulationOutcome::Finite(t);
        }
    }
    PopulationOutcome::Exceeded(cap)
}

pub fn law_population_histogram<R: Rng + ?Sized>(law: &OffspringLaw, runs: u64, cap: u64, rng: &mut R) -> PopulationHistogram {
    let mut hist = PopulationHistogram::default();
    for _ in 0..runs {
        hist.record(simulate_law_population(law, cap, rng));
    }
    hist
}

/// Counts of total population over repeated runs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PopulationHistogram {
    pub finite: BTreeMap<u64, u64>,
    pub exceeded: u64,
}

impl PopulationHistogram {
    pub fn runs(&self) -> u64 {
        self.finite.values().sum::<u64>() + self.exceeded
    }

    pub fn finite_runs(&self) -> u64 {
        self.finite.values().sum()
    }

    pub fn record(&mut self, outcome: PopulationOutcome) {
        match outcome {
            PopulationOutcome::Finite(t) => *self.finite.entry(t).or_insert(0) += 1,
            PopulationOutcome::Exceeded(_) => self.exceeded += 1,
        }
    }
}

pub fn population_histogram<R, F>(mut offspring: F, runs: u64, cap: u64, rng: &mut R) -> PopulationHistogram
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> u64,
{
    let mut hist = PopulationHistogram::default();
    for _ in 0..runs {
        hist.record(simulate_total_population(&mut offspring, cap, rng));
    }
    hist
}

/// Extinction probability of the m-fold Poisson process: 1 when `c <= 1/m`,
/// otherwise the root in `(0, 1)` of `x = e^{c(x^m - 1)}`, within `tol`.
///
/// Iterates `x <- e^{c(x^m - 1)}` from 0, which climbs monotonically to the
/// smallest fixed point. If the contraction is too weak to finish within the
/// budget (c just above 1/m), bisection takes over from the last iterate.
pub fn extinction_probability(m: u32, c: f64, tol: f64) -> Result<f64, BranchingError> {
    BranchingParams::new(m, c)?;
    if !(tol > 0.0) {
        return Err(BranchingError::Domain(format!("tolerance {tol} must be positive")));
    }
    if c * m as f64 <= 1.0 {
        return Ok(1.0);
    }
    let f = |x: f64| (c * (x.powi(m as i32) - 1.0)).exp();
    let mut x = 0.0f64;
    let mut prev_step = f64::NAN;
    for _ in 0..FIXED_POINT_BUDGET {
        let next = f(x);
        let step = next - x;
        x = next;
        // distance to the root is about step * rho / (1 - rho)
        let rho = if prev_step.is_finite() && prev_step > 0.0 { (step / prev_step).clamp(0.0, 1.0) } else { 1.0 };
        prev_step = step;
        if step <= tol * (1.0 - rho) && (x - f(x)).abs() <= tol {
            return Ok(x);
        }
    }
    bisect_root(m, c, x, tol)
}

/// Bisection on `g(x) = e^{c(x^m-1)} - x` over `[lo, hi]` with `g(lo) > 0 > g(hi)`.
fn bisect_root(m: u32, c: f64, lo: f64, tol: f64) -> Result<f64, BranchingError> {
    let g = |x: f64| (c * (x.powi(m as i32) - 1.0)).exp() - x;
    let mut lo = lo;
    let mut hi = None;
    let mut gap = 0.5;
    while gap > 1e-16 {
        let cand = 1.0 - gap;
        if cand > lo && g(cand) < 0.0 {
            hi = Some(cand);
            break;
        }
        gap /= 2.0;
    }
    let Some(mut hi) = hi else {
        return Err(BranchingError::NonConvergence { m, c, residual: g(lo).abs() });
    };
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    let residual = g(x).abs();
    if residual > tol {
        return Err(BranchingError::NonConvergence { m, c, residual });
    }
    Ok(x)
}

/// Block size of new s-sets per discovered edge for the branching
/// approximation of `variant`, or `None` when no giant-fraction equation is
/// known (loose tuples).
pub fn offspring_fold(r: u32, s: u32, variant: ConnectivityVariant) -> Result<Option<u32>, BranchingError> {
    if !variant.allows(r, s) {
        return Err(BranchingError::Domain(format!("variant {variant} does not allow r={r}, s={s}")));
    }
    Ok(match variant {
        ConnectivityVariant::LooseTuple => None,
        ConnectivityVariant::LooseSet if r == 2 * s => Some(1),
        _ => Some(binom_u64(r as u64, s as u64)? as u32 - 1),
    })
}

/// Asymptotic fraction of s-sets in the giant component at `p = c / C(n, r-s)`.
///
/// Solves `1 - z = e^{c((1-z)^m - 1)}` with `m = C(r,s) - 1`; for loose sets
/// with `r = 2s` this becomes `1 - z = e^{-cz}`. Returns 0 at or below the
/// threshold, including `c = 0`.
pub fn giant_fraction(r: u32, s: u32, c: f64, variant: ConnectivityVariant, tol: f64) -> Result<f64, BranchingError> {
    let m = offspring_fold(r, s, variant)?
        .ok_or_else(|| BranchingError::Domain(format!("no giant-fraction equation for {variant}")))?;
    if c == 0.0 {
        return Ok(0.0);
    }
    let x = extinction_probability(m, c, tol)?;
    Ok(if x >= 1.0 { 0.0 } else { 1.0 - x })
}

/// `C(m, c) = (mc - 1)^2 / (2 m^2 (c + c^2))`, the rate in `Pr(T = K) < e^{-CK}`.
pub fn tail_constant(m: u32, c: f64) -> Result<f64, BranchingError> {
    BranchingParams::new(m, c)?;
    let m = m as f64;
    if m * c <= 1.0 {
        return Err(BranchingError::Domain(format!("tail constant needs c > 1/m, got m={m}, c={c}")));
    }
    Ok((m * c - 1.0).powi(2) / (2.0 * m * m * (c + c * c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // Oracle: plain bisection on h(x) = e^{c(x^m-1)} - x, bracketing the
    // smallest root by scanning from 0 upwards on a fine grid.
    fn oracle_root(m: u32, c: f64) -> f64 {
        let h = |x: f64| (c * (x.powi(m as i32) - 1.0)).exp() - x;
        let mut lo = 0.0;
        let mut hi = 0.0;
        for i in 1..100_000 {
            let x = i as f64 / 100_000.0;
            if h(x) <= 0.0 {
                hi = x;
                break;
            }
            lo = x;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if h(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn oracle_values() {
        assert!((oracle_root(1, 2.0) - 0.203_187_869_979_979_4).abs() < 1e-12);
        assert!((oracle_root(2, 1.0) - 0.450_763_652_017_307).abs() < 1e-9);
    }

    #[test]
    fn extinction_examples() {
        assert_eq!(extinction_probability(2, 0.5, DEFAULT_TOLERANCE).unwrap(), 1.0);
        let x = extinction_probability(1, 2.0, DEFAULT_TOLERANCE).unwrap();
        assert!((x - oracle_root(1, 2.0)).abs() < 1e-11, "{x}");
        assert!((x - 0.20319).abs() < 1e-5);
        let x = extinction_probability(2, 1.0, DEFAULT_TOLERANCE).unwrap();
        assert!((x - oracle_root(2, 1.0)).abs() < 1e-11, "{x}");
        assert!((x - 0.4505).abs() < 5e-4);
    }

    #[test]
    fn extinction_near_threshold_uses_fallback() {
        for (m, c) in [(1, 1.0 + 1e-6), (2, 0.5 + 1e-7), (3, 1.0 / 3.0 + 1e-5)] {
            let x = extinction_probability(m, c, DEFAULT_TOLERANCE).unwrap();
            assert!(x < 1.0);
            assert!((x - (c * (x.powi(m as i32) - 1.0)).exp()).abs() <= DEFAULT_TOLERANCE);
        }
    }

    #[test]
    fn extinction_dichotomy_grid() {
        for m in 1..=6u32 {
            for j in 1..=40 {
                let c = 0.05 * j as f64;
                let x = extinction_probability(m, c, DEFAULT_TOLERANCE).unwrap();
                if j * m <= 20 {
                    assert_eq!(x, 1.0, "m={m} c={c}");
                } else {
                    assert!(x < 1.0 && x > 0.0, "m={m} c={c}");
                    assert!((x - oracle_root(m, c)).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn giant_fraction_examples() {
        let z = giant_fraction(3, 2, 1.0, ConnectivityVariant::Standard, DEFAULT_TOLERANCE).unwrap();
        assert!((z - (1.0 - oracle_root(2, 1.0))).abs() < 1e-9);
        assert!((z - 0.5495).abs() < 5e-4);
        let z = giant_fraction(2, 1, 2.0, ConnectivityVariant::Standard, DEFAULT_TOLERANCE).unwrap();
        assert!((z - 0.79681).abs() < 1e-5);
        // 1 - z = e^{-2z}
        assert!((1.0 - z - (-2.0 * z).exp()).abs() < 1e-11);
        for c in [0.3, 0.9, 1.0] {
            assert_eq!(giant_fraction(4, 2, c, ConnectivityVariant::LooseSet, DEFAULT_TOLERANCE).unwrap(), 0.0);
        }
        let z = giant_fraction(4, 2, 2.0, ConnectivityVariant::LooseSet, DEFAULT_TOLERANCE).unwrap();
        assert!((z - 0.79681).abs() < 1e-5);
        // standard r = 2s still uses m = C(4,2) - 1 = 5
        let z = giant_fraction(4, 2, 0.3, ConnectivityVariant::Standard, DEFAULT_TOLERANCE).unwrap();
        assert!((z - (1.0 - oracle_root(5, 0.3))).abs() < 1e-9);
        assert_eq!(giant_fraction(3, 1, 0.0, ConnectivityVariant::Standard, DEFAULT_TOLERANCE).unwrap(), 0.0);
        assert!(giant_fraction(3, 1, -1.0, ConnectivityVariant::Standard, DEFAULT_TOLERANCE).is_err());
        assert!(giant_fraction(4, 2, 2.0, ConnectivityVariant::LooseTuple, DEFAULT_TOLERANCE).is_err());
        assert!(giant_fraction(3, 2, 2.0, ConnectivityVariant::LooseSet, DEFAULT_TOLERANCE).is_err());
    }

    #[test]
    fn tail_constant_examples() {
        assert!((tail_constant(2, 1.0).unwrap() - 0.0625).abs() < 1e-15);
        assert!((tail_constant(1, 2.0).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        assert!(tail_constant(2, 0.5).is_err());
        let tiny = tail_constant(2, 0.5 + 1e-9).unwrap();
        assert!(tiny > 0.0 && tiny < 1e-15);
    }

    #[test]
    fn params_validation() {
        assert!(BranchingParams::new(0, 1.0).is_err());
        assert!(BranchingParams::new(1, 0.0).is_err());
        assert!(BranchingParams::new(1, f64::NAN).is_err());
        assert!(BinomialParams::new(1, 10, 1.5).is_err());
        assert!(extinction_probability(1, 2.0, 0.0).is_err());
    }

    #[test]
    fn generating_function_identity() {
        for (m, c) in [(1, 0.7), (2, 1.0), (3, 2.5), (5, 0.4)] {
            let p = BranchingParams::new(m, c).unwrap();
            for x in [0.1f64, 0.5, 0.9] {
                let series: f64 = (0..200u64).map(|k| p.pmf(k * m as u64) * x.powi((k * m as u64) as i32)).sum();
                let closed = (c * (x.powi(m as i32) - 1.0)).exp();
                assert!((series - closed).abs() < 1e-10, "m={m} c={c} x={x}");
            }
            assert_eq!(p.pmf(1 + m as u64 * 3) * (m > 1) as u8 as f64, 0.0);
        }
    }

    #[test]
    fn poisson_draws_are_multiples_of_m() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = BranchingParams::new(3, 1.7).unwrap();
        assert!((0..10_000).all(|_| sample_mfold_poisson(&p, &mut rng) % 3 == 0));
    }

    #[test]
    fn plain_poisson_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = BranchingParams::new(1, 2.3).unwrap();
        let n = 100_000;
        let mean = (0..n).map(|_| sample_mfold_poisson(&p, &mut rng)).sum::<u64>() as f64 / n as f64;
        let sd = (2.3f64 / n as f64).sqrt();
        assert!((mean - 2.3).abs() <= 4.0 * sd, "{mean}");
    }

    #[test]
    fn large_mean_falls_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 20_000;
        let mean = (0..n).map(|_| sample_poisson(50.0, &mut rng)).sum::<u64>() as f64 / n as f64;
        assert!((mean - 50.0).abs() <= 4.0 * (50.0f64 / n as f64).sqrt());
    }

    #[test]
    fn lemma_style_tail_bound_m2_c1() {
        // Pr(Z >= 2k) <= 1/k!
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = BranchingParams::new(2, 1.0).unwrap();
        let n = 100_000;
        let hits = (0..n).filter(|_| sample_mfold_poisson(&p, &mut rng) >= 6).count() as f64 / n as f64;
        let slack = 3.0 * (1.0f64 / 6.0 * (5.0 / 6.0) / n as f64).sqrt();
        assert!(hits <= 1.0 / 6.0 + slack);
    }

    #[test]
    fn binomial_degenerate_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let zero = BinomialParams::new(2, 100, 0.0).unwrap();
        let one = BinomialParams::new(2, 100, 1.0).unwrap();
        for _ in 0..100 {
            assert_eq!(sample_mfold_binomial(&zero, &mut rng), 0);
            assert_eq!(sample_mfold_binomial(&one, &mut rng), 200);
        }
    }

    #[test]
    fn population_trivial_samplers() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        assert_eq!(simulate_total_population(|_| 0, 10, &mut rng), PopulationOutcome::Finite(1));
        assert_eq!(simulate_total_population(|_| 1, 10, &mut rng), PopulationOutcome::Exceeded(10));
        assert_eq!(simulate_total_population(|_| 3, 1, &mut rng), PopulationOutcome::Exceeded(1));
    }

    #[test]
    fn histogram_conserves_runs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = BranchingParams::new(2, 1.0).unwrap();
        let h = population_histogram(|r: &mut ChaCha8Rng| sample_mfold_poisson(&p, r), 5_000, 1_000, &mut rng);
        assert_eq!(h.runs(), 5_000);
        assert!(h.finite.keys().all(|&t| t % 2 == 1), "T is odd for m = 2");
    }

    #[test]
    fn extinction_frequency_m2_c1() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = BranchingParams::new(2, 1.0).unwrap();
        let runs = 100_000u64;
        let law = OffspringLaw::Poisson(p);
        let h = law_population_histogram(&law, runs, 100_000, &mut rng);
        let q = oracle_root(2, 1.0);
        let freq = h.finite_runs() as f64 / runs as f64;
        let sd = (q * (1.0 - q) / runs as f64).sqrt();
        assert!((freq - q).abs() <= 3.0 * sd, "{freq} vs {q}");
    }
    #[test]
    fn batched_population_matches_stepwise() {
        // same law, different streams: compare distributions of min(T, 60)
        let p = BranchingParams::new(2, 0.9).unwrap();
        let law = OffspringLaw::Poisson(p);
        let runs = 40_000;
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(10);
        let step = population_histogram(|r: &mut ChaCha8Rng| sample_mfold_poisson(&p, r), runs, 60, &mut a);
        let batch = law_population_histogram(&law, runs, 60, &mut b);
        for t in [1u64, 3, 5, 7] {
            let x = *step.finite.get(&t).unwrap_or(&0) as f64 / runs as f64;
            let y = *batch.finite.get(&t).unwrap_or(&0) as f64 / runs as f64;
            let sd = (x * (1.0 - x) * 2.0 / runs as f64).sqrt();
            assert!((x - y).abs() <= 4.0 * sd + 1e-9, "T={t}: {x} vs {y}");
        }
        let x = step.exceeded as f64 / runs as f64;
        let y = batch.exceeded as f64 / runs as f64;
        assert!((x - y).abs() <= 4.0 * (x * (1.0 - x) * 2.0 / runs as f64).sqrt());
    }

    #[test]
    fn batched_population_respects_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let law = OffspringLaw::Binomial(BinomialParams::new(3, 10, 0.5).unwrap());
        for _ in 0..100 {
            match simulate_law_population(&law, 1_000, &mut rng) {
                PopulationOutcome::Finite(t) => assert!(t <= 1_000 && t % 3 == 1),
                PopulationOutcome::Exceeded(cap) => assert_eq!(cap, 1_000),
            }
        }
    }
}
