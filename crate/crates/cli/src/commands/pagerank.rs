use crate::args::{Cli, FormatArg, PagerankArgs};
use crate::output::{emit, read_file, CliError, Provenance};
use gapbench_core::{iteration_bound, power_method, DirectedGraph, GoogleOperator};
use std::fmt::Write as _;

#[derive(serde::Serialize)]
struct Summary {
    n: usize,
    alpha: f64,
    epsilon: f64,
    iterations: usize,
    iteration_bound: usize,
    residual: f64,
    top_vertex: usize,
    top_score: f64,
}

pub fn run(cli: &Cli, a: &PagerankArgs) -> Result<(), CliError> {
    let graph = DirectedGraph::load_edge_list(&read_file(&a.input)?)?;
    let google = GoogleOperator::from_graph(&graph, a.alpha)?;
    let result = power_method(&google, a.epsilon, a.max_iter)?;

    let mut body = String::from("vertex,score\n");
    for (i, score) in result.pi.iter().enumerate() {
        let _ = writeln!(body, "{i},{score}");
    }
    let mut prov = Provenance::new("pagerank");
    prov.push("input", a.input.display())
        .push("alpha", a.alpha)
        .push("epsilon", a.epsilon)
        .push("max_iter", a.max_iter)
        .push("n", graph.n())
        .push("m", graph.m())
        .push("deterministic", cli.deterministic);
    emit(&a.output, &prov, &body)?;

    let (top_vertex, top_score) = result
        .pi
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.partial_cmp(b).expect("finite scores"))
        .map(|(i, &s)| (i, s))
        .expect("non-empty graph");
    let summary = Summary {
        n: graph.n(),
        alpha: a.alpha,
        epsilon: a.epsilon,
        iterations: result.iterations,
        iteration_bound: iteration_bound(a.alpha, a.epsilon),
        residual: result.residual,
        top_vertex,
        top_score,
    };
    let text = match a.format {
        FormatArg::Json => serde_json::to_string(&summary).expect("serializable summary"),
        FormatArg::Csv => format!(
            "pagerank: n={} alpha={} epsilon={} iterations={} (bound {}) residual={:.3e} top={}:{:.6}",
            summary.n,
            summary.alpha,
            summary.epsilon,
            summary.iterations,
            summary.iteration_bound,
            summary.residual,
            summary.top_vertex,
            summary.top_score
        ),
    };
    if a.output.is_some() {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    Ok(())
}
