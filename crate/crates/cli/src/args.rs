use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "gapbench",
    version,
    about = "Google matrices, PageRank, and adiabatic spectral-gap experiments"
)]
pub struct Cli {
    /// Cap the worker-thread pool.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Force bit-reproducible runs (reductions are fixed-order by
    /// construction; the flag is recorded in output provenance).
    #[arg(long, global = true)]
    pub deterministic: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated graph as an edge-list file.
    Generate(GenerateArgs),
    /// Power-method PageRank scores for a graph.
    Pagerank(PagerankArgs),
    /// Gap curve g(s) and minimum gap for one operator.
    Gap(GapArgs),
    /// Minimum-gap scaling scan over a graph family.
    Scan(ScanArgs),
    /// Search for gap-minimizing deterministic transition matrices.
    Adversary(AdversaryArgs),
    /// Classical-vs-quantum runtime-bound comparison.
    Report(ReportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    #[value(name = "worst-case")]
    WorstCase,
    #[value(name = "scale-free")]
    ScaleFree,
    Uniform,
}

impl std::fmt::Display for FamilyArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyArg::WorstCase => write!(f, "worst-case"),
            FamilyArg::ScaleFree => write!(f, "scale-free"),
            FamilyArg::Uniform => write!(f, "uniform"),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Auto,
    Dense,
    Iterative,
}

impl std::fmt::Display for MethodArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MethodArg::Auto => write!(f, "auto"),
            MethodArg::Dense => write!(f, "dense"),
            MethodArg::Iterative => write!(f, "iterative"),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    Csv,
    Json,
}

impl std::fmt::Display for FormatArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatArg::Csv => write!(f, "csv"),
            FormatArg::Json => write!(f, "json"),
        }
    }
}

/// Scale-free generator controls shared by generate/gap/scan.
#[derive(Args, Debug, Clone, Copy)]
pub struct ScaleFreeArgs {
    /// Probability of adding a node with an out-edge.
    #[arg(long, default_value_t = 0.135)]
    pub sf_alpha: f64,
    /// Probability of adding an edge between existing nodes.
    #[arg(long, default_value_t = 0.86)]
    pub sf_beta: f64,
    /// Probability of adding a node with an in-edge.
    #[arg(long, default_value_t = 0.005)]
    pub sf_gamma: f64,
    /// In-degree offset for preferential target choice.
    #[arg(long, default_value_t = 0.0)]
    pub sf_delta_in: f64,
    /// Out-degree offset for preferential source choice.
    #[arg(long, default_value_t = 1.0)]
    pub sf_delta_out: f64,
}

impl ScaleFreeArgs {
    pub fn params(&self) -> gapbench_core::ScaleFreeParams {
        gapbench_core::ScaleFreeParams {
            alpha: self.sf_alpha,
            beta: self.sf_beta,
            gamma: self.sf_gamma,
            delta_in: self.sf_delta_in,
            delta_out: self.sf_delta_out,
        }
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Graph family to generate.
    #[arg(value_enum)]
    pub family: FamilyArg,
    /// Vertex count.
    #[arg(long)]
    pub n: usize,
    /// Edge count (uniform family only; defaults to 3n).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub sf: ScaleFreeArgs,
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PagerankArgs {
    /// Edge-list file to load.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    /// CSV output path for (vertex, score); stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct GapArgs {
    /// Edge-list file to load (alternative to --family).
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Generate the operand graph instead of loading one.
    #[arg(long, value_enum, requires = "n")]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge count for the uniform family (defaults to 3n).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub sf: ScaleFreeArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Coarse grid size over s in [0, 1].
    #[arg(long, default_value_t = 33)]
    pub grid: usize,
    /// Golden-section bracket width in s at which refinement stops.
    #[arg(long, default_value_t = 1e-6)]
    pub refine_tol: f64,
    /// Eigensolver residual tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// CSV output path for (s, gap, phase); stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Write the gap curve as an SVG plot.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Family to scan: worst-case or scale-free.
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Comma-separated damping factors.
    #[arg(long, value_delimiter = ',', required = true)]
    pub alphas: Vec<f64>,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub ns: Vec<usize>,
    /// Seeds per size (scale-free family).
    #[arg(long, default_value_t = 5)]
    pub seeds: usize,
    #[command(flatten)]
    pub sf: ScaleFreeArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 33)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub refine_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Base seed; per-instance seeds derive from it.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// CSV output path for (alpha, n, seed, delta, delta_inverse).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Write a log-log delta^{-1} vs n plot.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct AdversaryArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    /// Enumerate all n^n deterministic matrices (n <= 5).
    #[arg(long, conflicts_with = "hill_climb")]
    pub exhaustive: bool,
    /// Local search with random restarts instead of enumeration.
    #[arg(long)]
    pub hill_climb: bool,
    /// Evaluation budget for hill climbing.
    #[arg(long, default_value_t = 500)]
    pub budget: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-7)]
    pub refine_tol: f64,
    /// CSV output path for candidate records; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Write the minimizing graph as an edge-list file.
    #[arg(long)]
    pub graph_output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.85)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub epsilon: f64,
    /// Measured minimum gap; when omitted, --input is required and the gap
    /// is computed from that graph.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Exponent on ln(1/eps) in the quantum proxy.
    #[arg(long, default_value_t = 1.0)]
    pub eps_exponent: f64,
    /// Exponent on delta^{-1} in the quantum proxy.
    #[arg(long, default_value_t = 1.0)]
    pub delta_exponent: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}
