//! The `hyperphase` command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid parameters, 3 capacity
//! exceeded, 4 malformed input file, 5 sweep grid point over capacity.
//! Results go to standard output; diagnostics go to standard error.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::branching::{
    extinction_probability, law_population_histogram, offspring_fold, BinomialParams, BranchingError,
    BranchingParams, OffspringLaw, DEFAULT_POPULATION_CAP, DEFAULT_TOLERANCE,
};
use crate::combinatorics::CombError;
use crate::connectivity::{
    components_union_find, explore_component_dfs, new_search, write_component_dump, ConnectivityError,
    ConnectivityVariant,
};
use crate::experiments::{
    edge_probability, format_g, run_sweep_with_threads, threshold, write_sweep_csv, ExperimentError, SweepConfig,
};
use crate::model::{read_edge_list, sample_hypergraph, write_edge_list, Hypergraph, ModelError, SampleMethod, SampleSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARAM: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_MALFORMED: i32 = 4;
pub const EXIT_SWEEP_CAPACITY: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "hyperphase", version, about = "Components of random hypergraphs and their branching-process limits")]
pub struct Cli {
    /// Seed for every random choice the command makes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample H^r(n, p) and write it as an edge list.
    Generate(GenerateArgs),
    /// Label the s-th-order components of an edge-list file.
    Components(ComponentsArgs),
    /// Trace the stack-based exploration from one s-set.
    Explore(ExploreArgs),
    /// Histogram of the total population of an m-fold branching process.
    Bp(BpArgs),
    /// Threshold, extinction probability and giant fraction.
    Solve(SolveArgs),
    /// Run a Monte Carlo sweep described by a TOML config.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group = clap::ArgGroup::new("density").required(true).multiple(false))]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long, group = "density")]
    pub p: Option<f64>,
    /// normalized mean, p = c / C(n, r-s); needs --s
    #[arg(long, group = "density", requires = "s")]
    pub c: Option<f64>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long, default_value_t = SampleMethod::Auto)]
    pub method: SampleMethod,
    #[arg(long)]
    pub enumeration_cap: Option<u64>,
    /// output file (standard output when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ComponentsArgs {
    #[arg(long = "input")]
    pub input: PathBuf,
    #[arg(long)]
    pub s: u32,
    #[arg(long, default_value_t = ConnectivityVariant::Standard)]
    pub variant: ConnectivityVariant,
    /// list member ranks after each component
    #[arg(long)]
    pub members: bool,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long = "input")]
    pub input: PathBuf,
    #[arg(long)]
    pub s: u32,
    /// colex rank of the starting s-set
    #[arg(long, default_value_t = 0)]
    pub start: u64,
    /// run the New Search with this halting parameter instead of the plain search
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BpArgs {
    #[arg(long)]
    pub m: u32,
    /// Poisson mean (unused by the binomial law)
    #[arg(long, required_unless_present = "p")]
    pub c: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub runs: u64,
    #[arg(long, default_value_t = DEFAULT_POPULATION_CAP)]
    pub cap: u64,
    /// binomial trial count N; switches to the m-fold binomial law
    #[arg(long, requires = "p")]
    pub trials: Option<u64>,
    #[arg(long, requires = "trials")]
    pub p: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    pub c: f64,
    #[arg(long, default_value_t = ConnectivityVariant::Standard)]
    pub variant: ConnectivityVariant,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// output CSV (standard output when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// worker threads, 0 for one per core
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

/// A failed command: exit code plus message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl ToString) -> Self {
        Self { code, message: message.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::new(EXIT_IO, e)
    }
}

impl From<CombError> for Failure {
    fn from(e: CombError) -> Self {
        let code = match e {
            CombError::Overflow(_) | CombError::CapExceeded { .. } => EXIT_CAPACITY,
            _ => EXIT_PARAM,
        };
        Self::new(code, e)
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Parameter(_) => Self::new(EXIT_PARAM, e),
            ModelError::Capacity(_) => Self::new(EXIT_CAPACITY, e),
            ModelError::Parse { .. } => Self::new(EXIT_MALFORMED, e),
            ModelError::Comb(c) => c.into(),
            ModelError::Io(io) => io.into(),
        }
    }
}

impl From<ConnectivityError> for Failure {
    fn from(e: ConnectivityError) -> Self {
        match e {
            ConnectivityError::Capacity { .. } => Self::new(EXIT_CAPACITY, e),
            ConnectivityError::Comb(c) => c.into(),
            ConnectivityError::Model(m) => m.into(),
            _ => Self::new(EXIT_PARAM, e),
        }
    }
}

impl From<BranchingError> for Failure {
    fn from(e: BranchingError) -> Self {
        Self::new(EXIT_PARAM, e)
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        let code = match &e {
            e if e.is_capacity() => EXIT_SWEEP_CAPACITY,
            ExperimentError::Io(_) => EXIT_IO,
            ExperimentError::Parse(_) => EXIT_MALFORMED,
            _ => EXIT_PARAM,
        };
        Self::new(code, e)
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARAM } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdout).and_then(|()| stdout.flush().map_err(Failure::from)) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Generate(a) => generate(a, cli.seed, out),
        Command::Components(a) => components(a, out),
        Command::Explore(a) => explore(a, out),
        Command::Bp(a) => bp(a, cli.seed, out),
        Command::Solve(a) => solve(a, out),
        Command::Sweep(a) => sweep(a, out),
    }
}

fn load(path: &PathBuf) -> Result<Hypergraph, Failure> {
    let file = File::open(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    Ok(read_edge_list(BufReader::new(file))?)
}

fn generate(a: &GenerateArgs, seed: u64, out: &mut dyn Write) -> Result<(), Failure> {
    let p = match (a.p, a.c, a.s) {
        (Some(p), _, _) => p,
        (None, Some(c), Some(s)) => {
            if s == 0 || s >= a.r || a.r > a.n {
                return Err(Failure::new(EXIT_PARAM, format!("--c needs 1 <= s < r <= n, got n={} r={} s={s}", a.n, a.r)));
            }
            if !(c.is_finite() && c >= 0.0) {
                return Err(Failure::new(EXIT_PARAM, format!("c = {c} must be nonnegative")));
            }
            edge_probability(a.n, a.r, s, c)?
        }
        _ => unreachable!("clap enforces exactly one of --p and --c"),
    };
    let mut spec = SampleSpec::new(a.n, a.r, p, seed).with_method(a.method);
    if let Some(cap) = a.enumeration_cap {
        spec.enumeration_cap = cap;
    }
    let h = sample_hypergraph(&spec)?;
    match &a.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_edge_list(&h, &mut w)?;
            w.flush()?;
            writeln!(out, "{}", h.num_edges())?;
        }
        None => write_edge_list(&h, out)?,
    }
    Ok(())
}

fn components(a: &ComponentsArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let h = load(&a.input)?;
    let labeling = components_union_find(&h, a.s, a.variant)?;
    write_component_dump(&labeling, a.members, out)?;
    Ok(())
}

fn explore(a: &ExploreArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let h = load(&a.input)?;
    let trace = match a.epsilon {
        Some(eps) => new_search(&h, a.s, a.start, eps)?,
        None => explore_component_dfs(&h, a.s, a.start)?,
    };
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    writeln!(
        out,
        "halt={} visited={} live={} queried={}",
        trace.halt_reason.name(),
        trace.visited.len(),
        trace.live.len(),
        trace.queried
    )?;
    writeln!(out, "visited: {}", join(&trace.visited))?;
    writeln!(out, "live: {}", join(&trace.live))?;
    Ok(())
}

fn bp(a: &BpArgs, seed: u64, out: &mut dyn Write) -> Result<(), Failure> {
    if a.cap < 1 {
        return Err(Failure::new(EXIT_PARAM, "--cap must be at least 1"));
    }
    let law = match (a.trials, a.p) {
        (Some(trials), Some(p)) => OffspringLaw::Binomial(BinomialParams::new(a.m, trials, p)?),
        _ => OffspringLaw::Poisson(BranchingParams::new(a.m, a.c.expect("clap requires --c"))?),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hist = law_population_histogram(&law, a.runs, a.cap, &mut rng);
    writeln!(out, "T,count")?;
    for (t, count) in &hist.finite {
        writeln!(out, "{t},{count}")?;
    }
    writeln!(out, "inf,{}", hist.exceeded)?;
    Ok(())
}

fn solve(a: &SolveArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let c_star = threshold(a.r, a.s, a.variant)?;
    if !(a.c.is_finite() && a.c > 0.0) {
        return Err(Failure::new(EXIT_PARAM, format!("c = {} must be positive", a.c)));
    }
    let (x, z) = match offspring_fold(a.r, a.s, a.variant)? {
        None => (String::new(), String::new()),
        Some(m) => {
            let x = extinction_probability(m, a.c, DEFAULT_TOLERANCE)?;
            let z = if a.c < c_star {
                String::new()
            } else if x >= 1.0 {
                "0".to_string()
            } else {
                format_g(1.0 - x, 10)
            };
            (format_g(x, 10), z)
        }
    };
    writeln!(out, "c_star={} x={x} z={z}", format_g(c_star, 10))?;
    Ok(())
}

fn sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let config = SweepConfig::from_path(&a.config)?;
    let records = run_sweep_with_threads(&config, a.threads)?;
    match &a.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_sweep_csv(&records, &mut w)?;
            w.flush()?;
        }
        None => write_sweep_csv(&records, out)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("hyperphase").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn solve_outputs() {
        let (code, out, _) = run(&["solve", "--r", "3", "--s", "2", "--c", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "c_star=0.5 x=0.450763652 z=0.549236348\n");
        let (_, out, _) = run(&["solve", "--r", "3", "--s", "2", "--c", "0.5"]);
        assert_eq!(out, "c_star=0.5 x=1 z=0\n");
        let (_, out, _) = run(&["solve", "--r", "3", "--s", "2", "--c", "0.3"]);
        assert_eq!(out, "c_star=0.5 x=1 z=\n");
        let (_, out, _) = run(&["solve", "--r", "2", "--s", "1", "--c", "2"]);
        assert!(out.starts_with("c_star=1 x=0.2031878"), "{out}");
        let (_, out, _) = run(&["solve", "--r", "4", "--s", "2", "--c", "2", "--variant", "loose_tuple"]);
        assert_eq!(out, "c_star=0.09090909091 x= z=\n");
    }

    #[test]
    fn parameter_errors_exit_2() {
        assert_eq!(run(&["solve", "--r", "3", "--s", "3", "--c", "1"]).0, EXIT_PARAM);
        assert_eq!(run(&["solve", "--r", "3", "--s", "2", "--c", "1", "--variant", "loose_set"]).0, EXIT_PARAM);
        assert_eq!(run(&["generate", "--n", "5", "--r", "3"]).0, EXIT_PARAM);
        assert_eq!(run(&["generate", "--n", "5", "--r", "3", "--p", "0.1", "--c", "1", "--s", "1"]).0, EXIT_PARAM);
        assert_eq!(run(&["generate", "--n", "5", "--r", "3", "--p", "1.5"]).0, EXIT_PARAM);
        assert_eq!(run(&["bp", "--m", "0", "--c", "1"]).0, EXIT_PARAM);
    }

    #[test]
    fn generate_to_stdout() {
        let (code, out, _) = run(&["generate", "--n", "5", "--r", "3", "--p", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next().unwrap(), "5 3 10");
        assert_eq!(out.lines().count(), 11);
    }

    #[test]
    fn bp_histogram_conserves_runs() {
        let (code, out, _) = run(&["bp", "--m", "2", "--c", "1", "--runs", "500", "--seed", "3"]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), "T,count");
        let total: u64 = lines.map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
        assert_eq!(total, 500);
        let (code, out, _) = run(&["bp", "--m", "1", "--trials", "100", "--p", "0.005", "--runs", "50"]);
        assert_eq!(code, 0);
        assert!(out.contains("1,"));
    }
}
