//! gapbench-core: a numerical laboratory for the spectral-gap structure of
//! adiabatic PageRank.
//!
//! The crate builds Google operators G = alpha P^T + (1-alpha) n^-1 11^T over
//! directed graphs, runs power-method PageRank, assembles the interpolation
//! Hamiltonian H(s) = s (I-G)^T (I-G) + (1-s)(I - n^-1 11^T) as an implicit
//! symmetric operator, locates the minimum eigenvalue gap delta over
//! s in [0, 1], measures the endpoint-difference norm Lambda, and runs the
//! scaling and adversarial-search experiments on top of those pieces.
//!
//! Everything numeric is deterministic: randomized algorithms take explicit
//! seeds, matrix-vector products are fixed-order gathers, and parallel scans
//! collect results by input index. Rerunning any experiment with the same
//! configuration reproduces its output bit for bit.

pub mod dense;
pub mod experiments;
pub mod google;
pub mod graph;
pub mod hamiltonian;
pub mod operator;
pub mod pagerank;
pub mod spectra;
pub mod tridiag;
pub mod util;

pub use google::{
    transition_matrix, DanglingPolicy, GoogleOperator, OperatorError, StochasticOperator,
    DEFAULT_DENSE_THRESHOLD,
};
pub use graph::{
    scale_free_graph, uniform_random_graph, worst_case_graph, DirectedGraph, GraphError,
    ScaleFreeParams,
};
pub use hamiltonian::{lambda_norm, HamiltonianOperator, LambdaEstimate};
pub use pagerank::{
    get_element, inner_product, iteration_bound, power_method, PageRankError, PageRankResult,
};
pub use spectra::{
    gap_at, lowest_two_eigen, min_gap, GapProfile, Method, MinGapConfig, SolverConfig,
    SpectraError, SpectrumResult,
};
pub use experiments::{
    adversarial_search, fit_power_law, runtime_report, worst_case_scaling, www_scaling,
    AdversarialOutcome, AlphaScaling, ExperimentError, RuntimeModel, RuntimeReport, ScalingFit,
    SearchStrategy, WwwScaling,
};
