//! Classical power-method PageRank plus the two extraction operations
//! (single element, inner product).

use crate::google::{GoogleOperator, OperatorError};
use crate::util::{dot, kahan_sum, l1_distance};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PageRankError {
    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),
    #[error("power method hit max_iter = {iterations} with residual {residual:.3e}")]
    MaxIterationsExceeded { iterations: usize, residual: f64 },
    #[error("vertex index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PageRankResult {
    /// Stationary probability vector.
    pub pi: Vec<f64>,
    /// Number of operator applications performed.
    pub iterations: usize,
    /// Final L1 change between successive iterates.
    pub residual: f64,
    pub epsilon: f64,
    pub alpha: f64,
}

/// A-priori iteration bound for the power method started from the uniform
/// vector: ceil(ln eps / ln alpha) + 2. The +2 absorbs the start-vector
/// constant.
pub fn iteration_bound(alpha: f64, epsilon: f64) -> usize {
    if alpha <= 0.0 {
        return 2;
    }
    (epsilon.ln() / alpha.ln()).ceil() as usize + 2
}

/// Iterates x <- G x from the uniform start until the L1 change drops to
/// `epsilon`. No per-step renormalization: G is column-stochastic, so the
/// probability mass is preserved exactly up to rounding (checked in debug
/// builds).
pub fn power_method(
    google: &GoogleOperator,
    epsilon: f64,
    max_iter: usize,
) -> Result<PageRankResult, PageRankError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(PageRankError::InvalidEpsilon(epsilon));
    }
    let n = google.n();
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        google.apply_into(&x, &mut y);
        residual = l1_distance(&x, &y);
        std::mem::swap(&mut x, &mut y);
        debug_assert!(
            (kahan_sum(&x) - 1.0).abs() < 1e-9,
            "probability mass drifted: {}",
            kahan_sum(&x)
        );
        if residual <= epsilon {
            return Ok(PageRankResult {
                pi: x,
                iterations: it,
                residual,
                epsilon,
                alpha: google.alpha(),
            });
        }
    }
    Err(PageRankError::MaxIterationsExceeded {
        iterations: max_iter,
        residual,
    })
}

/// pi_i, the score of one vertex.
pub fn get_element(result: &PageRankResult, index: usize) -> Result<f64, PageRankError> {
    result
        .pi
        .get(index)
        .copied()
        .ok_or(PageRankError::IndexOutOfRange {
            index,
            n: result.pi.len(),
        })
}

/// <pi1, pi2> between two PageRank vectors of equal dimension.
pub fn inner_product(r1: &PageRankResult, r2: &PageRankResult) -> Result<f64, PageRankError> {
    if r1.pi.len() != r2.pi.len() {
        return Err(PageRankError::Operator(OperatorError::DimensionMismatch {
            expected: r1.pi.len(),
            got: r2.pi.len(),
        }));
    }
    Ok(dot(&r1.pi, &r2.pi))
}

/// Closed-form stationary vector of the worst-case (two-funnel) graph:
/// pi_0 = (alpha (floor(n/2) - 1) + 1) / n, pi_{n-1} symmetric with the
/// ceil block, all other entries (1 - alpha) / n.
pub fn worst_case_closed_form(n: usize, alpha: f64) -> Vec<f64> {
    let nf = n as f64;
    let first = (alpha * ((n / 2) as f64 - 1.0) + 1.0) / nf;
    let last = (alpha * (n.div_ceil(2) as f64 - 1.0) + 1.0) / nf;
    let mut pi = vec![(1.0 - alpha) / nf; n];
    pi[0] = first;
    pi[n - 1] = last;
    pi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{worst_case_graph, DirectedGraph};
    use crate::util::norm1;

    fn google(g: &DirectedGraph, alpha: f64) -> GoogleOperator {
        GoogleOperator::from_graph(g, alpha).unwrap()
    }

    #[test]
    fn two_cycle_is_uniform() {
        let g = DirectedGraph::load_edge_list("n 2\n0 1\n1 0").unwrap();
        for alpha in [0.1, 0.5, 0.85] {
            let r = power_method(&google(&g, alpha), 1e-10, 1000).unwrap();
            assert!((r.pi[0] - 0.5).abs() < 1e-10);
            assert!((r.pi[1] - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn worst_case_closed_form_reproduced() {
        for (n, alpha) in [(4usize, 0.85), (5, 0.85), (10, 0.5), (33, 0.99)] {
            let g = worst_case_graph(n).unwrap();
            let r = power_method(&google(&g, alpha), 1e-12, 10_000).unwrap();
            let want = worst_case_closed_form(n, alpha);
            for (a, b) in r.pi.iter().zip(&want) {
                assert!((a - b).abs() < 1e-10, "n={n} alpha={alpha}: {a} vs {b}");
            }
        }
        // Spot value from the closed form at n = 4, alpha = 0.85.
        let g = worst_case_graph(4).unwrap();
        let r = power_method(&google(&g, 0.85), 1e-12, 1000).unwrap();
        assert!((r.pi[0] - 0.4625).abs() < 1e-10);
        assert!((r.pi[1] - 0.0375).abs() < 1e-10);
    }

    #[test]
    fn iteration_bound_is_the_documented_value() {
        assert_eq!(iteration_bound(0.85, 1e-8), 116);
        let g = worst_case_graph(16).unwrap();
        let r = power_method(&google(&g, 0.85), 1e-8, 1000).unwrap();
        assert!(r.iterations <= 116, "took {}", r.iterations);
    }

    #[test]
    fn fixed_point_invariant() {
        let g = worst_case_graph(12).unwrap();
        let op = google(&g, 0.85);
        let eps = 1e-9;
        let r = power_method(&op, eps, 10_000).unwrap();
        let gx = op.apply(&r.pi).unwrap();
        let diff: Vec<f64> = gx.iter().zip(&r.pi).map(|(a, b)| a - b).collect();
        assert!(norm1(&diff) <= 2.0 * eps);
        assert!((kahan_sum(&r.pi) - 1.0).abs() < 1e-12);
        assert!(r.pi.iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn max_iter_exceeded_reports_residual() {
        let g = worst_case_graph(8).unwrap();
        let err = power_method(&google(&g, 0.85), 1e-12, 1).unwrap_err();
        match err {
            PageRankError::MaxIterationsExceeded { iterations, residual } => {
                assert_eq!(iterations, 1);
                assert!(residual > 0.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn extraction_examples() {
        let g = worst_case_graph(4).unwrap();
        let r = power_method(&google(&g, 0.85), 1e-12, 1000).unwrap();
        assert!((get_element(&r, 0).unwrap() - 0.4625).abs() < 1e-10);
        assert!(get_element(&r, 4).is_err());

        let uniform = PageRankResult {
            pi: vec![0.25; 4],
            iterations: 0,
            residual: 0.0,
            epsilon: 1e-10,
            alpha: 0.85,
        };
        assert!((get_element(&uniform, 2).unwrap() - 0.25).abs() < 1e-15);
        // <pi, u> = 1/n for any probability vector.
        assert!((inner_product(&r, &uniform).unwrap() - 0.25).abs() < 1e-10);
        assert!((inner_product(&uniform, &uniform).unwrap() - 0.25).abs() < 1e-15);
        // <pi, pi> = 2 (0.4625^2 + 0.0375^2) from the closed form.
        let self_product = 2.0 * (0.4625f64.powi(2) + 0.0375f64.powi(2));
        assert!((self_product - 0.430625).abs() < 1e-15);
        assert!((inner_product(&r, &r).unwrap() - self_product).abs() < 1e-10);

        let other = PageRankResult {
            pi: vec![0.5; 2],
            iterations: 0,
            residual: 0.0,
            epsilon: 1e-10,
            alpha: 0.85,
        };
        assert!(inner_product(&r, &other).is_err());
    }

    #[test]
    fn invalid_epsilon_rejected() {
        let g = worst_case_graph(4).unwrap();
        assert!(power_method(&google(&g, 0.85), 0.0, 10).is_err());
        assert!(power_method(&google(&g, 0.85), 1.5, 10).is_err());
    }
}
