use crate::args::{Cli, FamilyArg, GenerateArgs};
use crate::commands::build_graph;
use crate::output::{emit, CliError, Provenance};

pub fn run(cli: &Cli, a: &GenerateArgs) -> Result<(), CliError> {
    let graph = build_graph(a.family, a.n, a.m, a.seed, &a.sf)?;
    let mut prov = Provenance::new("generate");
    prov.push("family", a.family)
        .push("n", a.n)
        .push("m", graph.m())
        .push("seed", a.seed);
    if a.family == FamilyArg::ScaleFree {
        prov.push("sf_alpha", a.sf.sf_alpha)
            .push("sf_beta", a.sf.sf_beta)
            .push("sf_gamma", a.sf.sf_gamma)
            .push("sf_delta_in", a.sf.sf_delta_in)
            .push("sf_delta_out", a.sf.sf_delta_out);
    }
    prov.push("deterministic", cli.deterministic);
    emit(&a.output, &prov, &graph.to_edge_list())
}
