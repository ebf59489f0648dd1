//! Scaling studies over graph families, adversarial search over transition
//! matrices, log-log power-law fitting, and the runtime-bound report.

use crate::graph::{scale_free_graph, worst_case_graph, DirectedGraph, GraphError, ScaleFreeParams};
use crate::google::{GoogleOperator, OperatorError};
use crate::spectra::{min_gap, MinGapConfig, SpectraError};
use crate::util::median;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("power-law fit needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("power-law fit requires positive coordinates, got ({x}, {y})")]
    NonPositivePoint { x: f64, y: f64 },
    #[error("degenerate fit: all abscissae equal")]
    DegenerateAbscissae,
    #[error("scaling law inapplicable at alpha = {0}; need 0 < alpha < 1")]
    InvalidAlpha(f64),
    #[error("scaling runs need n >= 8, got {0}")]
    SizeTooSmall(usize),
    #[error("www scaling needs at least 3 sizes, got {0}")]
    TooFewSizes(usize),
    #[error("www scaling needs at least 3 seeds per size, got {0}")]
    TooFewSeeds(usize),
    #[error("exhaustive search enumerates n^n matrices and is capped at n <= 5, got {0}")]
    ExhaustiveTooLarge(usize),
    #[error("runtime report needs delta > 0, got {0}")]
    NonPositiveDelta(f64),
    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),
    #[error("runtime model exponents must be positive")]
    InvalidModel,
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// Least-squares power law y = c * x^beta fitted in log-log space.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScalingFit {
    pub points: Vec<(f64, f64)>,
    /// Fitted exponent beta.
    pub exponent: f64,
    /// Fitted prefactor c.
    pub prefactor: f64,
    pub r_squared: f64,
    /// Log-space residuals ln y_i - (ln c + beta ln x_i).
    pub residuals: Vec<f64>,
}

pub fn fit_power_law(points: &[(f64, f64)]) -> Result<ScalingFit, ExperimentError> {
    if points.len() < 3 {
        return Err(ExperimentError::TooFewPoints(points.len()));
    }
    for &(x, y) in points {
        if x <= 0.0 || y <= 0.0 || !x.is_finite() || !y.is_finite() {
            return Err(ExperimentError::NonPositivePoint { x, y });
        }
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx < 1e-24 {
        return Err(ExperimentError::DegenerateAbscissae);
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let beta = sxy / sxx;
    let intercept = mean_y - beta * mean_x;
    let residuals: Vec<f64> = logs
        .iter()
        .map(|&(lx, ly)| ly - (intercept + beta * lx))
        .collect();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let ss_tot: f64 = logs.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let r_squared = if ss_tot < 1e-28 {
        1.0 // flat data, flat fit: nothing left to explain
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(ScalingFit {
        points: points.to_vec(),
        exponent: beta,
        prefactor: intercept.exp(),
        r_squared,
        residuals,
    })
}

/// One worst-case scaling run: delta per size plus the fitted law for a
/// single damping factor.
#[derive(Debug, Clone, serde::Serialize)]
pub struct AlphaScaling {
    pub alpha: f64,
    /// (n, delta) pairs in input order.
    pub deltas: Vec<(usize, f64)>,
    /// Fit of delta^{-1} = c n^beta.
    pub fit: ScalingFit,
    /// c (1-alpha)^2, comparable with 0.5 across alphas.
    pub c_hat: f64,
}

/// Minimum gaps of worst_case_graph(n) across `ns`, fitted per alpha.
pub fn worst_case_scaling(
    alphas: &[f64],
    ns: &[usize],
    cfg: &MinGapConfig,
) -> Result<Vec<AlphaScaling>, ExperimentError> {
    for &n in ns {
        if n < 8 {
            return Err(ExperimentError::SizeTooSmall(n));
        }
    }
    alphas
        .iter()
        .map(|&alpha| {
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(ExperimentError::InvalidAlpha(alpha));
            }
            let deltas: Vec<(usize, f64)> = ns
                .par_iter()
                .map(|&n| -> Result<(usize, f64), ExperimentError> {
                    let graph = worst_case_graph(n)?;
                    let g = GoogleOperator::from_graph(&graph, alpha)?;
                    Ok((n, min_gap(&g, cfg)?.delta))
                })
                .collect::<Result<_, _>>()?;
            let points: Vec<(f64, f64)> = deltas
                .iter()
                .map(|&(n, d)| (n as f64, 1.0 / d))
                .collect();
            let fit = fit_power_law(&points)?;
            let c_hat = fit.prefactor * (1.0 - alpha) * (1.0 - alpha);
            Ok(AlphaScaling {
                alpha,
                deltas,
                fit,
                c_hat,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct WwwPoint {
    pub n: usize,
    pub seed: u64,
    pub delta: f64,
    pub delta_inverse: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct WwwScaling {
    /// Fit of median delta^{-1} per size.
    pub fit: ScalingFit,
    /// Every (n, seed) measurement, ordered by size then seed.
    pub raw: Vec<WwwPoint>,
}

/// Gap scaling over the scale-free ensemble: several seeds per size, median
/// delta^{-1} per size (heavy-tailed ensembles throw outlier gaps), then a
/// power-law fit on the medians.
pub fn www_scaling(
    params: &ScaleFreeParams,
    ns: &[usize],
    seeds_per_n: usize,
    alpha: f64,
    cfg: &MinGapConfig,
) -> Result<WwwScaling, ExperimentError> {
    if ns.len() < 3 {
        return Err(ExperimentError::TooFewSizes(ns.len()));
    }
    if seeds_per_n < 3 {
        return Err(ExperimentError::TooFewSeeds(seeds_per_n));
    }
    let work: Vec<(usize, u64)> = ns
        .iter()
        .flat_map(|&n| (1..=seeds_per_n as u64).map(move |seed| (n, seed)))
        .collect();
    let raw: Vec<WwwPoint> = work
        .par_iter()
        .map(|&(n, seed)| -> Result<WwwPoint, ExperimentError> {
            let graph = scale_free_graph(n, params, seed)?;
            let g = GoogleOperator::from_graph(&graph, alpha)?;
            let delta = min_gap(&g, cfg)?.delta;
            Ok(WwwPoint {
                n,
                seed,
                delta,
                delta_inverse: 1.0 / delta,
            })
        })
        .collect::<Result<_, _>>()?;
    let mut medians = Vec::with_capacity(ns.len());
    for &n in ns {
        let mut vals: Vec<f64> = raw
            .iter()
            .filter(|p| p.n == n)
            .map(|p| p.delta_inverse)
            .collect();
        medians.push((n as f64, median(&mut vals)));
    }
    Ok(WwwScaling {
        fit: fit_power_law(&medians)?,
        raw,
    })
}

/// Search strategy over deterministic transition matrices (each row a basis
/// vector; the extreme points of the stochastic polytope).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Enumerate all n^n assignments; only feasible for n <= 5.
    Exhaustive,
    /// Single-row perturbations with first-improvement acceptance and random
    /// restarts until the evaluation budget runs out.
    HillClimb,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CandidateRecord {
    /// assignment[i] is the single out-target of vertex i.
    pub assignment: Vec<u32>,
    pub delta: f64,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct AdversarialOutcome {
    pub assignment: Vec<u32>,
    pub delta: f64,
    pub evaluations: usize,
    /// HillClimb only: the budget ran out before the last restart converged.
    pub budget_exhausted: bool,
    /// Exhaustive only: every enumerated candidate in index order.
    pub candidates: Vec<CandidateRecord>,
}

/// The Eq.-style two-funnel assignment: first half to 0, second half to n-1.
pub fn worst_case_assignment(n: usize) -> Vec<u32> {
    (0..n)
        .map(|i| if i < n / 2 { 0 } else { (n - 1) as u32 })
        .collect()
}

fn assignment_graph(assignment: &[u32]) -> DirectedGraph {
    let edges: Vec<(u32, u32)> = assignment
        .iter()
        .enumerate()
        .map(|(i, &t)| (i as u32, t))
        .collect();
    DirectedGraph::new(assignment.len(), edges).expect("one out-edge per vertex is always valid")
}

fn delta_of_assignment(
    assignment: &[u32],
    alpha: f64,
    cfg: &MinGapConfig,
) -> Result<f64, ExperimentError> {
    let g = GoogleOperator::from_graph(&assignment_graph(assignment), alpha)?;
    Ok(min_gap(&g, cfg)?.delta)
}

/// Minimizes delta over deterministic P.
pub fn adversarial_search(
    n: usize,
    alpha: f64,
    strategy: SearchStrategy,
    budget: usize,
    seed: u64,
    cfg: &MinGapConfig,
) -> Result<AdversarialOutcome, ExperimentError> {
    match strategy {
        SearchStrategy::Exhaustive => exhaustive_search(n, alpha, cfg),
        SearchStrategy::HillClimb => hill_climb_search(n, alpha, budget, seed, cfg),
    }
}

fn decode_assignment(mut code: u64, n: usize) -> Vec<u32> {
    let mut f = vec![0u32; n];
    for slot in f.iter_mut() {
        *slot = (code % n as u64) as u32;
        code /= n as u64;
    }
    f
}

fn exhaustive_search(
    n: usize,
    alpha: f64,
    cfg: &MinGapConfig,
) -> Result<AdversarialOutcome, ExperimentError> {
    if !(2..=5).contains(&n) {
        return Err(ExperimentError::ExhaustiveTooLarge(n));
    }
    let total = (n as u64).pow(n as u32);
    let candidates: Vec<CandidateRecord> = (0..total)
        .into_par_iter()
        .map(|code| -> Result<CandidateRecord, ExperimentError> {
            let assignment = decode_assignment(code, n);
            let delta = delta_of_assignment(&assignment, alpha, cfg)?;
            Ok(CandidateRecord { assignment, delta })
        })
        .collect::<Result<_, _>>()?;
    let best = candidates
        .iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| {
            a.delta
                .partial_cmp(&b.delta)
                .expect("finite deltas")
                .then(ia.cmp(ib))
        })
        .map(|(_, c)| c.clone())
        .expect("n >= 2 yields at least 4 candidates");
    Ok(AdversarialOutcome {
        assignment: best.assignment,
        delta: best.delta,
        evaluations: total as usize,
        budget_exhausted: false,
        candidates,
    })
}

/// One first-improvement pass over all single-row changes. Returns the
/// improved assignment, or None at a local optimum. Exposed for the
/// local-optimality probe around the two-funnel instance.
pub fn improve_once(
    assignment: &[u32],
    current_delta: f64,
    alpha: f64,
    cfg: &MinGapConfig,
    evaluations: &mut usize,
    budget: usize,
) -> Result<Option<(Vec<u32>, f64)>, ExperimentError> {
    let n = assignment.len();
    for i in 0..n {
        // All row-i retargets, evaluated in parallel, accepted in index order.
        let tried: Vec<(u32, f64)> = (0..n as u32)
            .filter(|&t| t != assignment[i])
            .take(budget.saturating_sub(*evaluations))
            .collect::<Vec<u32>>()
            .into_par_iter()
            .map(|t| -> Result<(u32, f64), ExperimentError> {
                let mut cand = assignment.to_vec();
                cand[i] = t;
                Ok((t, delta_of_assignment(&cand, alpha, cfg)?))
            })
            .collect::<Result<_, _>>()?;
        *evaluations += tried.len();
        if let Some(&(t, d)) = tried.iter().find(|&&(_, d)| d < current_delta - 1e-14) {
            let mut next = assignment.to_vec();
            next[i] = t;
            return Ok(Some((next, d)));
        }
        if *evaluations >= budget {
            return Ok(None);
        }
    }
    Ok(None)
}

fn hill_climb_search(
    n: usize,
    alpha: f64,
    budget: usize,
    seed: u64,
    cfg: &MinGapConfig,
) -> Result<AdversarialOutcome, ExperimentError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluations = 0usize;
    let mut best: Option<(Vec<u32>, f64)> = None;
    while evaluations < budget {
        let mut current: Vec<u32> = (0..n).map(|_| rng.gen_range(0..n) as u32).collect();
        let mut current_delta = delta_of_assignment(&current, alpha, cfg)?;
        evaluations += 1;
        loop {
            match improve_once(&current, current_delta, alpha, cfg, &mut evaluations, budget)? {
                Some((next, d)) => {
                    current = next;
                    current_delta = d;
                }
                None => break,
            }
            if evaluations >= budget {
                break;
            }
        }
        if best.as_ref().map_or(true, |(_, d)| current_delta < *d) {
            best = Some((current, current_delta));
        }
    }
    let (assignment, delta) = best.expect("budget > 0 evaluates at least one start");
    Ok(AdversarialOutcome {
        assignment,
        delta,
        evaluations,
        budget_exhausted: evaluations >= budget,
        candidates: Vec::new(),
    })
}

/// Adiabatic runtime exponents: quantum proxy = (ln 1/eps)^a * delta^{-b}.
/// The default is the best case a = 1, b = 1.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct RuntimeModel {
    pub eps_exponent: f64,
    pub delta_exponent: f64,
}

impl Default for RuntimeModel {
    fn default() -> Self {
        Self {
            eps_exponent: 1.0,
            delta_exponent: 1.0,
        }
    }
}

/// Constant-free runtime proxies. Pure arithmetic on a measured delta; no
/// asymptotic claim is encoded beyond the formulas themselves.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct RuntimeReport {
    pub n: usize,
    pub alpha: f64,
    pub epsilon: f64,
    pub delta: f64,
    /// ceil(ln eps / ln alpha), the classical power-method bound.
    pub classical_bound: u64,
    /// (ln 1/eps)^a * delta^{-b}.
    pub quantum_proxy: f64,
    /// 0.5 (1-alpha)^{-2} n ln(1/eps), the worst-case law evaluated at n.
    pub worst_case_proxy: f64,
    pub quantum_over_classical: f64,
    pub worst_case_over_classical: f64,
}

pub fn runtime_report(
    n: usize,
    alpha: f64,
    epsilon: f64,
    delta: f64,
    model: &RuntimeModel,
) -> Result<RuntimeReport, ExperimentError> {
    if delta <= 0.0 {
        return Err(ExperimentError::NonPositiveDelta(delta));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(ExperimentError::InvalidEpsilon(epsilon));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(ExperimentError::InvalidAlpha(alpha));
    }
    if model.eps_exponent <= 0.0 || model.delta_exponent <= 0.0 {
        return Err(ExperimentError::InvalidModel);
    }
    let classical_bound = (epsilon.ln() / alpha.ln()).ceil() as u64;
    let ln_eps_inv = -epsilon.ln();
    let quantum_proxy = ln_eps_inv.powf(model.eps_exponent) * delta.powf(-model.delta_exponent);
    let worst_case_proxy =
        0.5 * (1.0 - alpha).powi(-2) * n as f64 * ln_eps_inv;
    Ok(RuntimeReport {
        n,
        alpha,
        epsilon,
        delta,
        classical_bound,
        quantum_proxy,
        worst_case_proxy,
        quantum_over_classical: quantum_proxy / classical_bound as f64,
        worst_case_over_classical: worst_case_proxy / classical_bound as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_laws_recovered() {
        let points: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, 2.0 * i as f64)).collect();
        let fit = fit_power_law(&points).unwrap();
        assert!((fit.exponent - 1.0).abs() < 1e-12);
        assert!((fit.prefactor - 2.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);

        let points: Vec<(f64, f64)> = [4.0f64, 9.0, 25.0, 64.0]
            .iter()
            .map(|&x| (x, x.powf(0.85)))
            .collect();
        let fit = fit_power_law(&points).unwrap();
        assert!((fit.exponent - 0.85).abs() < 1e-12);
    }

    #[test]
    fn fit_rejects_bad_inputs() {
        assert!(matches!(
            fit_power_law(&[(1.0, 2.0)]),
            Err(ExperimentError::TooFewPoints(1))
        ));
        assert!(matches!(
            fit_power_law(&[(1.0, 2.0), (2.0, -1.0), (3.0, 4.0)]),
            Err(ExperimentError::NonPositivePoint { .. })
        ));
        assert!(matches!(
            fit_power_law(&[(2.0, 2.0), (2.0, 3.0), (2.0, 4.0)]),
            Err(ExperimentError::DegenerateAbscissae)
        ));
    }

    #[test]
    fn flat_data_fits_flat() {
        let fit = fit_power_law(&[(1.0, 3.0), (2.0, 3.0), (4.0, 3.0)]).unwrap();
        assert!(fit.exponent.abs() < 1e-12);
        assert!((fit.prefactor - 3.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn worst_case_scaling_two_point_consistency() {
        // Small sizes keep this a smoke test; the acceptance suite covers the
        // full law.
        let runs = worst_case_scaling(&[0.85], &[8, 16, 32], &MinGapConfig::default()).unwrap();
        let run = &runs[0];
        assert!(run.fit.exponent > 0.7 && run.fit.exponent < 1.3, "beta {}", run.fit.exponent);
        assert!(run.c_hat > 0.2 && run.c_hat < 0.9, "c_hat {}", run.c_hat);
    }

    #[test]
    fn scaling_guards() {
        assert!(matches!(
            worst_case_scaling(&[0.0], &[8, 16, 32], &MinGapConfig::default()),
            Err(ExperimentError::InvalidAlpha(_))
        ));
        assert!(matches!(
            worst_case_scaling(&[0.85], &[4, 16], &MinGapConfig::default()),
            Err(ExperimentError::SizeTooSmall(4))
        ));
    }

    #[test]
    fn runtime_report_examples() {
        let r = runtime_report(4, 0.5, 0.5, 0.1, &RuntimeModel::default()).unwrap();
        assert_eq!(r.classical_bound, 1);
        assert!(matches!(
            runtime_report(4, 0.5, 0.5, 0.0, &RuntimeModel::default()),
            Err(ExperimentError::NonPositiveDelta(_))
        ));
        let r = runtime_report(128, 0.85, 1e-8, 1e-3, &RuntimeModel::default()).unwrap();
        let ln_eps_inv = (1e-8f64).ln().abs();
        assert!((r.quantum_proxy - ln_eps_inv * 1e3).abs() < 1e-6);
        assert!((r.worst_case_proxy - 0.5 * 128.0 * ln_eps_inv / 0.0225).abs() < 1e-6);
    }

    #[test]
    fn exhaustive_n3_contains_two_funnel_minimum() {
        let cfg = MinGapConfig {
            refine_tol: 1e-7,
            ..Default::default()
        };
        let out = adversarial_search(3, 0.85, SearchStrategy::Exhaustive, 0, 0, &cfg).unwrap();
        assert_eq!(out.evaluations, 27);
        assert_eq!(out.candidates.len(), 27);
        let reference = delta_of_assignment(&worst_case_assignment(3), 0.85, &cfg).unwrap();
        assert!(
            out.delta <= reference + 1e-10,
            "enumerated min {} vs two-funnel {}",
            out.delta,
            reference
        );
        assert!(
            reference <= out.delta + 1e-10,
            "two-funnel {} worse than enumerated min {}",
            reference,
            out.delta
        );
    }

    #[test]
    fn exhaustive_guard() {
        assert!(matches!(
            adversarial_search(6, 0.85, SearchStrategy::Exhaustive, 0, 0, &MinGapConfig::default()),
            Err(ExperimentError::ExhaustiveTooLarge(6))
        ));
    }

    #[test]
    fn hill_climb_respects_budget_and_improves() {
        let cfg = MinGapConfig::default();
        let out = adversarial_search(4, 0.85, SearchStrategy::HillClimb, 40, 3, &cfg).unwrap();
        assert!(out.evaluations <= 41);
        assert!(out.delta > 0.0);
        let rerun = adversarial_search(4, 0.85, SearchStrategy::HillClimb, 40, 3, &cfg).unwrap();
        assert_eq!(out.assignment, rerun.assignment);
        assert_eq!(out.delta, rerun.delta);
    }
}
