//! Command-line surface and the validated run configuration.

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

/// Base degrees the verifier accepts.
pub const SUPPORTED_N: std::ops::RangeInclusive<usize> = 3..=6;
/// Tensor power exponents the verifier accepts.
pub const SUPPORTED_Q: std::ops::RangeInclusive<usize> = 1..=2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Structure,
    Spectra,
    Extremal,
    Aut,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Structure => "structure",
            Suite::Spectra => "spectra",
            Suite::Extremal => "extremal",
            Suite::Aut => "aut",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    /// Edge list, one `u v` pair per line.
    Edges,
    /// Eigenvalue/multiplicity CSV.
    Spectrum,
    /// The pinned independent sets as JSON.
    Sets,
}

/// Raw command line.
#[derive(Debug, Parser)]
#[command(
    name = "altgraph",
    version,
    about = "Verifies structural, spectral, extremal and symmetry claims \
             about even derangement Cayley graphs and their tensor powers"
)]
pub struct Cli {
    /// Base degree n (repeatable); defaults to 3 4 5 6.
    #[arg(long = "n", value_name = "N")]
    pub n: Vec<usize>,

    /// Tensor power q (repeatable); defaults to 1 2.
    #[arg(long = "q", value_name = "Q")]
    pub q: Vec<usize>,

    /// Claim suite to run (repeatable); defaults to all.
    #[arg(long, value_enum)]
    pub suite: Vec<Suite>,

    /// Absolute off-diagonal tolerance for eigenvalue computations.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,

    /// Largest graph that will be materialized explicitly.
    #[arg(long = "max-vertices", default_value_t = 4096)]
    pub max_vertices: usize,

    /// Per-claim time budget in seconds; claims whose nominal cost exceeds
    /// it are reported as skipped.
    #[arg(long = "time-budget", default_value_t = 300)]
    pub time_budget: u64,

    /// Seed for randomized components (group-order engine, sampling).
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Number of worker threads for claim execution.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,

    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Write the report (or export) here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Export an artifact for a single instance instead of running claims.
    #[arg(long, value_enum)]
    pub export: Option<ExportKind>,

    /// Enable the long-running extras (degree-6 independent-set
    /// enumeration and the degree-6 refinement search).
    #[arg(long)]
    pub stretch: bool,
}

/// Validated configuration; serialized into the report metadata.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub n_values: Vec<usize>,
    pub q_values: Vec<usize>,
    pub suites: Vec<Suite>,
    pub tol: f64,
    pub max_vertices: usize,
    pub time_budget_sec: u64,
    pub seed: u64,
    pub jobs: usize,
    pub stretch: bool,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "usage error: {}", self.0)
    }
}

impl std::error::Error for UsageError {}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig, UsageError> {
        let mut n_values = if cli.n.is_empty() {
            SUPPORTED_N.collect()
        } else {
            cli.n.clone()
        };
        n_values.sort_unstable();
        n_values.dedup();
        if let Some(&bad) = n_values.iter().find(|v| !SUPPORTED_N.contains(v)) {
            return Err(UsageError(format!(
                "--n {bad} outside supported range {}..={}",
                SUPPORTED_N.start(),
                SUPPORTED_N.end()
            )));
        }

        let mut q_values = if cli.q.is_empty() {
            SUPPORTED_Q.collect()
        } else {
            cli.q.clone()
        };
        q_values.sort_unstable();
        q_values.dedup();
        if let Some(&bad) = q_values.iter().find(|v| !SUPPORTED_Q.contains(v)) {
            return Err(UsageError(format!(
                "--q {bad} outside supported range {}..={}",
                SUPPORTED_Q.start(),
                SUPPORTED_Q.end()
            )));
        }

        let mut suites = if cli.suite.is_empty() {
            vec![Suite::All]
        } else {
            cli.suite.clone()
        };
        suites.sort_unstable();
        suites.dedup();

        if cli.jobs == 0 {
            return Err(UsageError("--jobs must be at least 1".to_string()));
        }
        if cli.tol.is_nan() || cli.tol <= 0.0 {
            return Err(UsageError("--tol must be positive".to_string()));
        }
        if cli.max_vertices == 0 {
            return Err(UsageError("--max-vertices must be positive".to_string()));
        }

        Ok(RunConfig {
            n_values,
            q_values,
            suites,
            tol: cli.tol,
            max_vertices: cli.max_vertices,
            time_budget_sec: cli.time_budget,
            seed: cli.seed,
            jobs: cli.jobs,
            stretch: cli.stretch,
        })
    }

    /// Whether a claim belonging to `suite` should run.
    pub fn wants(&self, suite: Suite) -> bool {
        self.suites.contains(&Suite::All) || self.suites.contains(&suite)
    }

    /// Requested instances, lexicographic in `(n, q)`.
    pub fn instances(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &n in &self.n_values {
            for &q in &self.q_values {
                out.push((n, q));
            }
        }
        out
    }
}
