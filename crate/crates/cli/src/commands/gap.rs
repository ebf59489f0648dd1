use crate::args::{Cli, FormatArg, GapArgs};
use crate::commands::{build_graph, resolve_method, solver_config};
use crate::output::{dense_threshold, emit, read_file, write_file, CliError, Provenance};
use crate::svg;
use gapbench_core::{min_gap, DirectedGraph, GoogleOperator, MinGapConfig};
use std::fmt::Write as _;

#[derive(serde::Serialize)]
struct Summary {
    n: usize,
    alpha: f64,
    method: String,
    delta: f64,
    delta_inverse: f64,
    s_star: f64,
    degraded: bool,
}

pub fn run(cli: &Cli, a: &GapArgs) -> Result<(), CliError> {
    let graph = load_or_generate(a)?;
    let google = GoogleOperator::from_graph(&graph, a.alpha)?;
    let threshold = dense_threshold()?;
    let method = resolve_method(a.method, graph.n(), threshold);
    let cfg = MinGapConfig {
        solver: solver_config(method, a.tol, threshold, a.seed),
        coarse_points: a.grid,
        refine_tol: a.refine_tol,
    };
    let profile = min_gap(&google, &cfg)?;

    let mut body = String::from("s,gap,phase\n");
    for &(s, gap) in &profile.samples {
        let _ = writeln!(body, "{s},{gap},coarse");
    }
    for &(s, gap) in &profile.refinement {
        let _ = writeln!(body, "{s},{gap},refine");
    }
    let mut prov = Provenance::new("gap");
    match &a.input {
        Some(p) => prov.push("input", p.display()),
        None => prov.push("family", a.family.expect("validated source")),
    };
    prov.push("n", graph.n())
        .push("m", graph.m())
        .push("alpha", a.alpha)
        .push("seed", a.seed)
        .push("method", method)
        .push("grid", a.grid)
        .push("refine_tol", a.refine_tol)
        .push("tol", a.tol)
        .push("deterministic", cli.deterministic);
    emit(&a.output, &prov, &body)?;

    if let Some(plot_path) = &a.plot {
        let series = [
            svg::Series {
                label: "coarse grid",
                points: profile.samples.clone(),
                line: true,
            },
            svg::Series {
                label: "refinement",
                points: profile.refinement.clone(),
                line: false,
            },
        ];
        let doc = svg::plot(
            &format!("gap curve, n={} alpha={}", graph.n(), a.alpha),
            "s",
            "gap",
            &series,
            false,
        );
        write_file(plot_path, &doc)?;
    }

    let summary = Summary {
        n: graph.n(),
        alpha: a.alpha,
        method: method.to_string(),
        delta: profile.delta,
        delta_inverse: 1.0 / profile.delta,
        s_star: profile.s_star,
        degraded: profile.degraded,
    };
    let text = match a.format {
        FormatArg::Json => serde_json::to_string(&summary).expect("serializable summary"),
        FormatArg::Csv => format!(
            "gap: n={} alpha={} method={} delta={:.9e} delta_inverse={:.4} s_star={:.6} degraded={}",
            summary.n,
            summary.alpha,
            summary.method,
            summary.delta,
            summary.delta_inverse,
            summary.s_star,
            summary.degraded
        ),
    };
    if a.output.is_some() {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    if profile.degraded {
        return Err(CliError::Numeric(
            "eigensolver failed to converge on part of the grid; results are flagged degraded"
                .into(),
        ));
    }
    Ok(())
}

fn load_or_generate(a: &GapArgs) -> Result<DirectedGraph, CliError> {
    match (&a.input, a.family) {
        (Some(path), None) => Ok(DirectedGraph::load_edge_list(&read_file(path)?)?),
        (None, Some(family)) => build_graph(family, a.n.expect("clap requires n"), a.m, a.seed, &a.sf),
        (None, None) => Err(CliError::Usage(
            "provide --input FILE or --family FAMILY --n N".into(),
        )),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with prevents this"),
    }
}
