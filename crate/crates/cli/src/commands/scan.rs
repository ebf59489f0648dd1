use crate::args::{Cli, FamilyArg, FormatArg, ScanArgs};
use crate::commands::{resolve_method, solver_config};
use crate::output::{dense_threshold, emit, write_file, CliError, Provenance};
use crate::svg;
use gapbench_core::{worst_case_scaling, www_scaling, MinGapConfig};
use std::fmt::Write as _;

#[derive(serde::Serialize)]
struct FitSummary {
    alpha: f64,
    beta: f64,
    c: f64,
    /// c (1-alpha)^2; None for the scale-free family.
    c_hat: Option<f64>,
    r_squared: f64,
}

pub fn run(cli: &Cli, a: &ScanArgs) -> Result<(), CliError> {
    if a.ns.is_empty() {
        return Err(CliError::Usage("--ns needs at least one size".into()));
    }
    if a.alphas.is_empty() {
        return Err(CliError::Usage("--alphas needs at least one value".into()));
    }
    let threshold = dense_threshold()?;
    let max_n = *a.ns.iter().max().expect("non-empty ns");
    let method = resolve_method(a.method, max_n, threshold);
    let cfg = MinGapConfig {
        solver: solver_config(method, a.tol, threshold, a.seed),
        coarse_points: a.grid,
        refine_tol: a.refine_tol,
    };

    let mut rows = String::new();
    let mut fits: Vec<FitSummary> = Vec::new();
    let mut plot_series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();

    match a.family {
        FamilyArg::WorstCase => {
            let runs = worst_case_scaling(&a.alphas, &a.ns, &cfg)?;
            for run in &runs {
                for &(n, delta) in &run.deltas {
                    let _ = writeln!(rows, "{},{n},0,{delta},{}", run.alpha, 1.0 / delta);
                }
                fits.push(FitSummary {
                    alpha: run.alpha,
                    beta: run.fit.exponent,
                    c: run.fit.prefactor,
                    c_hat: Some(run.c_hat),
                    r_squared: run.fit.r_squared,
                });
                plot_series.push((
                    format!("worst-case alpha={}", run.alpha),
                    run.fit.points.clone(),
                ));
            }
        }
        FamilyArg::ScaleFree => {
            for &alpha in &a.alphas {
                let www = www_scaling(&a.sf.params(), &a.ns, a.seeds, alpha, &cfg)?;
                for p in &www.raw {
                    let _ = writeln!(rows, "{alpha},{},{},{},{}", p.n, p.seed, p.delta, p.delta_inverse);
                }
                fits.push(FitSummary {
                    alpha,
                    beta: www.fit.exponent,
                    c: www.fit.prefactor,
                    c_hat: None,
                    r_squared: www.fit.r_squared,
                });
                plot_series.push((format!("scale-free alpha={alpha}"), www.fit.points.clone()));
            }
        }
        FamilyArg::Uniform => {
            return Err(CliError::Usage(
                "scan supports the worst-case and scale-free families".into(),
            ));
        }
    }

    let mut body = String::from("alpha,n,seed,delta,delta_inverse\n");
    body.push_str(&rows);
    for f in &fits {
        let _ = writeln!(
            body,
            "# fit alpha={} beta={:.6} c={:.6} c_hat={} r2={:.6}",
            f.alpha,
            f.beta,
            f.c,
            f.c_hat.map_or("-".to_string(), |v| format!("{v:.6}")),
            f.r_squared
        );
    }

    let mut prov = Provenance::new("scan");
    prov.push("family", a.family)
        .push("alphas", join(&a.alphas))
        .push("ns", join(&a.ns))
        .push("seeds", a.seeds)
        .push("seed", a.seed)
        .push("method", method)
        .push("grid", a.grid)
        .push("refine_tol", a.refine_tol)
        .push("tol", a.tol);
    if a.family == FamilyArg::ScaleFree {
        prov.push("sf_alpha", a.sf.sf_alpha)
            .push("sf_beta", a.sf.sf_beta)
            .push("sf_gamma", a.sf.sf_gamma)
            .push("sf_delta_in", a.sf.sf_delta_in)
            .push("sf_delta_out", a.sf.sf_delta_out);
    }
    prov.push("deterministic", cli.deterministic);
    emit(&a.output, &prov, &body)?;

    if let Some(plot_path) = &a.plot {
        let series: Vec<svg::Series<'_>> = plot_series
            .iter()
            .map(|(label, points)| svg::Series {
                label,
                points: points.clone(),
                line: true,
            })
            .collect();
        let doc = svg::plot(
            &format!("minimum-gap scaling, {} family", a.family),
            "n",
            "1/delta",
            &series,
            true,
        );
        write_file(plot_path, &doc)?;
    }

    for f in &fits {
        let text = match a.format {
            FormatArg::Json => serde_json::to_string(f).expect("serializable fit"),
            FormatArg::Csv => format!(
                "fit: alpha={} beta={:.4} c={:.4} c_hat={} r2={:.5}",
                f.alpha,
                f.beta,
                f.c,
                f.c_hat.map_or("-".to_string(), |v| format!("{v:.4}")),
                f.r_squared
            ),
        };
        if a.output.is_some() {
            println!("{text}");
        } else {
            eprintln!("{text}");
        }
    }
    Ok(())
}

fn join<T: std::fmt::Display>(vals: &[T]) -> String {
    vals.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
