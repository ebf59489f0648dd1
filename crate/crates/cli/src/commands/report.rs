use crate::args::{Cli, FormatArg, ReportArgs};
use crate::commands::{resolve_method, solver_config};
use crate::output::{dense_threshold, emit, read_file, CliError, Provenance};
use gapbench_core::{min_gap, runtime_report, DirectedGraph, GoogleOperator, MinGapConfig, RuntimeModel};
use std::fmt::Write as _;

pub fn run(cli: &Cli, a: &ReportArgs) -> Result<(), CliError> {
    let (delta, delta_source) = match (a.delta, &a.input) {
        (Some(d), _) => (d, "given".to_string()),
        (None, Some(path)) => {
            let graph = DirectedGraph::load_edge_list(&read_file(path)?)?;
            let google = GoogleOperator::from_graph(&graph, a.alpha)?;
            let threshold = dense_threshold()?;
            let method = resolve_method(a.method, graph.n(), threshold);
            let cfg = MinGapConfig {
                solver: solver_config(method, 1e-9, threshold, 1),
                ..MinGapConfig::default()
            };
            let profile = min_gap(&google, &cfg)?;
            if profile.degraded {
                return Err(CliError::Numeric(
                    "gap measurement degraded; rerun with a different solver config".into(),
                ));
            }
            (profile.delta, format!("measured:{}", path.display()))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "provide --delta VALUE or --input FILE to measure it".into(),
            ))
        }
    };
    let model = RuntimeModel {
        eps_exponent: a.eps_exponent,
        delta_exponent: a.delta_exponent,
    };
    let report = runtime_report(a.n, a.alpha, a.epsilon, delta, &model)?;

    let mut body = String::from("quantity,value\n");
    let _ = writeln!(body, "classical_bound,{}", report.classical_bound);
    let _ = writeln!(body, "quantum_proxy,{}", report.quantum_proxy);
    let _ = writeln!(body, "worst_case_proxy,{}", report.worst_case_proxy);
    let _ = writeln!(body, "quantum_over_classical,{}", report.quantum_over_classical);
    let _ = writeln!(
        body,
        "worst_case_over_classical,{}",
        report.worst_case_over_classical
    );

    let mut prov = Provenance::new("report");
    prov.push("n", a.n)
        .push("alpha", a.alpha)
        .push("epsilon", a.epsilon)
        .push("delta", delta)
        .push("delta_source", &delta_source)
        .push("eps_exponent", a.eps_exponent)
        .push("delta_exponent", a.delta_exponent)
        .push("deterministic", cli.deterministic);
    emit(&a.output, &prov, &body)?;

    let text = match a.format {
        FormatArg::Json => serde_json::to_string(&report).expect("serializable report"),
        FormatArg::Csv => format!(
            "report: n={} alpha={} epsilon={} delta={:.6e} classical_bound={} quantum_proxy={:.4e} worst_case_proxy={:.4e}",
            report.n,
            report.alpha,
            report.epsilon,
            report.delta,
            report.classical_bound,
            report.quantum_proxy,
            report.worst_case_proxy
        ),
    };
    if a.output.is_some() {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    Ok(())
}
