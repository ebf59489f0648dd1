mod adversary;
mod gap;
mod generate;
mod pagerank;
mod report;
mod scan;

use crate::args::{Cli, Command, FamilyArg, MethodArg, ScaleFreeArgs};
use crate::output::CliError;
use gapbench_core::{
    scale_free_graph, uniform_random_graph, worst_case_graph, DirectedGraph, Method, SolverConfig,
};

pub fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Generate(a) => generate::run(cli, a),
        Command::Pagerank(a) => pagerank::run(cli, a),
        Command::Gap(a) => gap::run(cli, a),
        Command::Scan(a) => scan::run(cli, a),
        Command::Adversary(a) => adversary::run(cli, a),
        Command::Report(a) => report::run(cli, a),
    }
}

/// Builds one graph from a family spec. The uniform family defaults to
/// m = 3n when no edge count is given.
pub fn build_graph(
    family: FamilyArg,
    n: usize,
    m: Option<usize>,
    seed: u64,
    sf: &ScaleFreeArgs,
) -> Result<DirectedGraph, CliError> {
    let g = match family {
        FamilyArg::WorstCase => worst_case_graph(n)?,
        FamilyArg::ScaleFree => scale_free_graph(n, &sf.params(), seed)?,
        FamilyArg::Uniform => uniform_random_graph(n, m.unwrap_or(3 * n), seed)?,
    };
    Ok(g)
}

/// Auto resolves to dense at or below the threshold, iterative above it.
/// An explicit dense request keeps the threshold guard: the solver refuses
/// instead of silently materializing a huge matrix.
pub fn resolve_method(arg: MethodArg, n: usize, threshold: usize) -> Method {
    match arg {
        MethodArg::Dense => Method::Dense,
        MethodArg::Iterative => Method::Iterative,
        MethodArg::Auto => {
            if n <= threshold {
                Method::Dense
            } else {
                Method::Iterative
            }
        }
    }
}

pub fn solver_config(
    method: Method,
    tol: f64,
    threshold: usize,
    seed: u64,
) -> SolverConfig {
    SolverConfig {
        method,
        tol,
        dense_threshold: threshold,
        seed,
        ..SolverConfig::default()
    }
}
