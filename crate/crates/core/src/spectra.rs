//! Two lowest eigenvalues of H(s), the gap curve g(s) = lambda2 - lambda1,
//! and the minimum gap delta over s in [0, 1].

use crate::dense::{dense_hamiltonian, symmetric_lowest_two};
use crate::google::{GoogleOperator, OperatorError, DEFAULT_DENSE_THRESHOLD};
use crate::hamiltonian::HamiltonianOperator;
use crate::operator::{ShiftedOperator, SymmetricOperator};
use crate::tridiag;
use crate::util::{dot, norm2, normalize};
use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

/// Spectrum shift for the iterative path: Lanczos runs on SHIFT*I - H and
/// takes the two largest Ritz values. The shift only relabels eigenvalues
/// (Krylov spaces are shift-invariant), so extraction stays correct even
/// when ||H|| exceeds the nominal bound the 6 was derived from.
const LANCZOS_SHIFT: f64 = 6.0;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error("coarse grid needs at least 9 points, got {0}")]
    TooFewGridPoints(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Method {
    Dense,
    Iterative,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Dense => write!(f, "dense"),
            Method::Iterative => write!(f, "iterative"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub method: Method,
    /// Residual tolerance for the iterative eigensolver.
    pub tol: f64,
    pub dense_threshold: usize,
    pub lanczos_max_iter: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            method: Method::Dense,
            tol: 1e-9,
            dense_threshold: DEFAULT_DENSE_THRESHOLD,
            lanczos_max_iter: 1200,
            seed: 12345,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub lambda1: f64,
    pub lambda2: f64,
    /// ||H v - lambda v||_2 for each returned pair.
    pub residual1: f64,
    pub residual2: f64,
    pub method: Method,
    /// False when the iterative path hit its cap; values are best estimates.
    pub converged: bool,
    pub eigenvector1: Vec<f64>,
    pub eigenvector2: Vec<f64>,
}

impl SpectrumResult {
    pub fn gap(&self) -> f64 {
        (self.lambda2 - self.lambda1).max(0.0)
    }
}

/// Two smallest eigenpairs of H(s) by the configured route.
pub fn lowest_two_eigen(
    h: &HamiltonianOperator<'_>,
    cfg: &SolverConfig,
) -> Result<SpectrumResult, SpectraError> {
    match cfg.method {
        Method::Dense => lowest_two_dense(h, cfg),
        Method::Iterative => Ok(lowest_two_lanczos(h, cfg)),
    }
}

fn lowest_two_dense(
    h: &HamiltonianOperator<'_>,
    cfg: &SolverConfig,
) -> Result<SpectrumResult, SpectraError> {
    let hd = dense_hamiltonian(h.google(), h.s(), cfg.dense_threshold)?;
    let (l1, l2, v1, v2) = symmetric_lowest_two(&hd);
    let r1 = (&hd * DVector::from_column_slice(&v1) - DVector::from_column_slice(&v1) * l1).norm();
    let r2 = (&hd * DVector::from_column_slice(&v2) - DVector::from_column_slice(&v2) * l2).norm();
    Ok(SpectrumResult {
        lambda1: l1,
        lambda2: l2,
        residual1: r1,
        residual2: r2,
        method: Method::Dense,
        converged: true,
        eigenvector1: v1,
        eigenvector2: v2,
    })
}

struct LanczosRun {
    thetas: (f64, f64),
    vectors: (Vec<f64>, Vec<f64>),
    converged: bool,
    /// Fewer than two Ritz pairs were reachable from this start vector.
    starved: bool,
}

/// Lanczos with full reorthogonalization on SHIFT*I - H.
fn lowest_two_lanczos(h: &HamiltonianOperator<'_>, cfg: &SolverConfig) -> SpectrumResult {
    let op = ShiftedOperator {
        op: h,
        scale: -1.0,
        shift: LANCZOS_SHIFT,
    };
    let mut run = None;
    for attempt in 0..3u64 {
        let r = lanczos_largest_two(&op, cfg, cfg.seed.wrapping_add(attempt));
        if !r.starved {
            run = Some(r);
            break;
        }
        run = Some(r);
    }
    let run = run.expect("at least one Lanczos attempt");
    let (theta1, theta2) = run.thetas;
    let lambda1 = LANCZOS_SHIFT - theta1;
    let lambda2 = LANCZOS_SHIFT - theta2;
    let (v1, v2) = run.vectors;
    let res = |v: &[f64], lam: f64| -> f64 {
        let hv = h.apply_vec(v);
        let mut acc = 0.0;
        for i in 0..v.len() {
            let d = hv[i] - lam * v[i];
            acc += d * d;
        }
        acc.sqrt()
    };
    SpectrumResult {
        residual1: res(&v1, lambda1),
        residual2: res(&v2, lambda2),
        lambda1,
        lambda2,
        method: Method::Iterative,
        converged: run.converged && !run.starved,
        eigenvector1: v1,
        eigenvector2: v2,
    }
}

fn lanczos_largest_two<O: SymmetricOperator>(op: &O, cfg: &SolverConfig, seed: u64) -> LanczosRun {
    let n = op.dim();
    let max_k = cfg.lanczos_max_iter.min(n).max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v0: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    normalize(&mut v0);
    let mut basis: Vec<Vec<f64>> = vec![v0];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![0.0; n];
    let mut converged = false;

    for j in 0..max_k {
        op.apply_into(&basis[j], &mut w);
        if j > 0 {
            let b = betas[j - 1];
            let prev = &basis[j - 1];
            for i in 0..n {
                w[i] -= b * prev[i];
            }
        }
        let a = dot(&w, &basis[j]);
        alphas.push(a);
        {
            let vj = &basis[j];
            for i in 0..n {
                w[i] -= a * vj[i];
            }
        }
        // Full reorthogonalization, two classical Gram-Schmidt passes.
        for _ in 0..2 {
            for v in &basis {
                let c = dot(&w, v);
                if c != 0.0 {
                    for i in 0..n {
                        w[i] -= c * v[i];
                    }
                }
            }
        }
        let b = norm2(&w);
        let k = alphas.len();
        if k >= 2 {
            let (theta1, theta2, y1, y2) = top_two_ritz(&alphas, &betas);
            let bound1 = (b * y1[k - 1]).abs();
            let bound2 = (b * y2[k - 1]).abs();
            if (bound1 <= cfg.tol && bound2 <= cfg.tol) || b <= 1e-13 || k == n {
                return LanczosRun {
                    thetas: (theta1, theta2),
                    vectors: (ritz_vector(&basis, &y1), ritz_vector(&basis, &y2)),
                    converged: true,
                    starved: false,
                };
            }
        } else if b <= 1e-13 {
            // Krylov space exhausted with a single Ritz pair: the start
            // vector sat inside a one-dimensional invariant subspace.
            return LanczosRun {
                thetas: (alphas[0], alphas[0]),
                vectors: (basis[0].clone(), basis[0].clone()),
                converged: false,
                starved: true,
            };
        }
        if alphas.len() == max_k {
            converged = false;
            break;
        }
        betas.push(b);
        let mut next = w.clone();
        normalize(&mut next);
        basis.push(next);
    }

    let (theta1, theta2, y1, y2) = top_two_ritz(&alphas, &betas);
    LanczosRun {
        thetas: (theta1, theta2),
        vectors: (ritz_vector(&basis, &y1), ritz_vector(&basis, &y2)),
        converged,
        starved: false,
    }
}

/// Two largest eigenvalues of the current tridiagonal, with eigenvectors.
fn top_two_ritz(alphas: &[f64], betas: &[f64]) -> (f64, f64, Vec<f64>, Vec<f64>) {
    let k = alphas.len();
    let e = &betas[..k - 1];
    let theta1 = tridiag::eigenvalue_by_index(alphas, e, k - 1);
    let theta2 = tridiag::eigenvalue_by_index(alphas, e, k - 2);
    let y1 = tridiag::eigenvector(alphas, e, theta1, None);
    let scale = theta1.abs().max(1.0);
    let y2 = if (theta1 - theta2).abs() < 1e-8 * scale {
        tridiag::eigenvector(alphas, e, theta2, Some(&y1))
    } else {
        tridiag::eigenvector(alphas, e, theta2, None)
    };
    (theta1, theta2, y1, y2)
}

fn ritz_vector(basis: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let n = basis[0].len();
    let mut x = vec![0.0; n];
    for (c, v) in y.iter().zip(basis) {
        for i in 0..n {
            x[i] += c * v[i];
        }
    }
    normalize(&mut x);
    x
}

/// g(s) = lambda2 - lambda1 at one interpolation point.
pub fn gap_at(
    google: &GoogleOperator,
    s: f64,
    cfg: &SolverConfig,
) -> Result<f64, SpectraError> {
    let h = HamiltonianOperator::new(google, s)?;
    Ok(lowest_two_eigen(&h, cfg)?.gap())
}

fn gap_eval(google: &GoogleOperator, s: f64, cfg: &SolverConfig) -> Result<(f64, bool), SpectraError> {
    let h = HamiltonianOperator::new(google, s)?;
    let r = lowest_two_eigen(&h, cfg)?;
    Ok((r.gap(), r.converged))
}

#[derive(Debug, Clone, Copy)]
pub struct MinGapConfig {
    pub solver: SolverConfig,
    pub coarse_points: usize,
    /// Width of the final golden-section bracket in s.
    pub refine_tol: f64,
}

impl Default for MinGapConfig {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            coarse_points: 33,
            refine_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct GapProfile {
    /// Coarse-grid samples (s, gap) in grid order.
    pub samples: Vec<(f64, f64)>,
    /// Evaluations made during golden-section refinement, in order.
    pub refinement: Vec<(f64, f64)>,
    pub s_star: f64,
    pub delta: f64,
    /// Some eigensolve did not converge; delta is still the best value seen.
    pub degraded: bool,
    pub method: Method,
}

/// Coarse scan of g(s) over a uniform grid followed by golden-section
/// refinement around the best bracket. The coarse pass guards against the
/// endpoint minima and possible non-unimodality of the gap curve.
pub fn min_gap(google: &GoogleOperator, cfg: &MinGapConfig) -> Result<GapProfile, SpectraError> {
    if cfg.coarse_points < 9 {
        return Err(SpectraError::TooFewGridPoints(cfg.coarse_points));
    }
    let p = cfg.coarse_points;
    let grid: Vec<f64> = (0..p).map(|i| i as f64 / (p - 1) as f64).collect();
    let evals: Vec<Result<(f64, bool), SpectraError>> = grid
        .par_iter()
        .map(|&s| gap_eval(google, s, &cfg.solver))
        .collect();
    let mut samples = Vec::with_capacity(p);
    let mut degraded = false;
    for (s, e) in grid.iter().zip(evals) {
        let (gap, conv) = e?;
        degraded |= !conv;
        samples.push((*s, gap));
    }
    let best_idx = samples
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.1.partial_cmp(&b.1).expect("gaps are finite"))
        .map(|(i, _)| i)
        .expect("grid is non-empty");
    let (mut s_star, mut delta) = samples[best_idx];

    let mut a = grid[best_idx.saturating_sub(1)];
    let mut b = grid[(best_idx + 1).min(p - 1)];
    let mut refinement = Vec::new();
    if b > a {
        let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
        let mut eval = |s: f64, refinement: &mut Vec<(f64, f64)>| -> Result<f64, SpectraError> {
            let (gap, conv) = gap_eval(google, s, &cfg.solver)?;
            degraded |= !conv;
            refinement.push((s, gap));
            Ok(gap)
        };
        let mut x1 = b - inv_phi * (b - a);
        let mut x2 = a + inv_phi * (b - a);
        let mut f1 = eval(x1, &mut refinement)?;
        let mut f2 = eval(x2, &mut refinement)?;
        let mut guard = 0;
        while b - a > cfg.refine_tol && guard < 300 {
            guard += 1;
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = eval(x1, &mut refinement)?;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = eval(x2, &mut refinement)?;
            }
        }
    }
    for &(s, gap) in &refinement {
        if gap < delta {
            delta = gap;
            s_star = s;
        }
    }
    Ok(GapProfile {
        samples,
        refinement,
        s_star,
        delta,
        degraded,
        method: cfg.solver.method,
    })
}
