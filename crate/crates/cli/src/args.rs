use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use petweave::codec::ReportFormat;

#[derive(Debug, Parser)]
#[command(
    name = "petweave",
    version,
    about = "Build and analyse the Petersen weave graphs G_n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write one graph6 line per requested member.
    Construct(ConstructArgs),
    /// Measure members and emit a parameter table.
    Report(ReportArgs),
    /// Identify family members among graph6 lines read from a file.
    Verify(VerifyArgs),
    /// Second-eigenvalue trend for G_3 up to G_{n-max}.
    Scan(ScanArgs),
}

/// A single `n` or an inclusive range `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
}

impl NRange {
    pub fn values(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }

    pub fn is_single(&self) -> bool {
        self.start == self.end
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("{t:?} is not a non-negative integer"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                (parse(a)?, parse(b)?)
            }
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(NRange { start, end })
    }
}

#[derive(Debug, Args)]
pub struct MemberArgs {
    /// Copy count, either `7` or an inclusive range such as `3..7`.
    #[arg(long)]
    pub n: NRange,
    /// Wiring permutation in cycle notation, e.g. "(1 2)". Needs a single n.
    #[arg(long)]
    pub sigma: Option<String>,
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    /// Gap below the degree for an eigenvalue to count as non-trivial.
    #[arg(long, default_value_t = 1e-6)]
    pub eig_tol: f64,
    /// Eigenvalues closer than this are counted once.
    #[arg(long, default_value_t = 1e-6)]
    pub cluster_tol: f64,
    /// Required eigenpair residual.
    #[arg(long, default_value_t = 1e-9)]
    pub target_accuracy: f64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, default_value = "markdown", value_parser = parse_format)]
    pub format: ReportFormat,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse()
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub member: MemberArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub member: MemberArgs,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    /// Node budget for the automorphism search.
    #[arg(long, default_value_t = petweave::symmetry::DEFAULT_SEARCH_BUDGET)]
    pub aut_budget: u64,
    /// Node budget for the Hamiltonian cycle search.
    #[arg(long, default_value_t = petweave::classify::DEFAULT_HAMILTON_BUDGET)]
    pub ham_budget: u64,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Compare against the bundled reference tables; exit 1 on divergence.
    #[arg(long)]
    pub assert_paper: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// File with one graph6 string per line.
    pub file: PathBuf,
    #[arg(long, default_value_t = petweave::symmetry::DEFAULT_SEARCH_BUDGET)]
    pub aut_budget: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub n_max: usize,
    #[command(flatten)]
    pub tolerances: ToleranceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}
