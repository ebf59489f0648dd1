//! Dense materializations and direct linear-algebra routes.
//!
//! Everything here goes through explicit matrices and factored solves, fully
//! independent of the sparse apply/Lanczos/power-iteration paths it is used
//! to cross-check. Guarded by the dense threshold, so it stays a desk-scale
//! tool.

use crate::google::{GoogleOperator, OperatorError};
use nalgebra::{DMatrix, DVector};

/// Dense H(s) = s (I-G)^T (I-G) + (1-s) (I - 11^T/n) built from the
/// materialized G by dense products.
pub fn dense_hamiltonian(
    google: &GoogleOperator,
    s: f64,
    threshold: usize,
) -> Result<DMatrix<f64>, OperatorError> {
    if !(0.0..=1.0).contains(&s) {
        return Err(OperatorError::InvalidInterpolation(s));
    }
    let n = google.n();
    let g = google.materialize_dense(threshold)?;
    let a = DMatrix::identity(n, n) - g;
    let mut h = a.transpose() * &a * s;
    let proj = (1.0 - s) * (DMatrix::identity(n, n) - DMatrix::from_element(n, n, 1.0 / n as f64));
    h += proj;
    // Kill rounding asymmetry before the symmetric eigensolver sees it.
    let ht = h.transpose();
    h = (h + ht) * 0.5;
    Ok(h)
}

/// Dense M = (I-G)^T (I-G) - I + 11^T/n.
pub fn dense_lambda_matrix(
    google: &GoogleOperator,
    threshold: usize,
) -> Result<DMatrix<f64>, OperatorError> {
    let n = google.n();
    let g = google.materialize_dense(threshold)?;
    let a = DMatrix::identity(n, n) - g;
    let mut m = a.transpose() * &a;
    m -= DMatrix::identity(n, n);
    m += DMatrix::from_element(n, n, 1.0 / n as f64);
    let mt = m.transpose();
    Ok((m + mt) * 0.5)
}

/// Direct PageRank: solves (I - alpha P^T) pi = (1-alpha)/n 1 by LU.
/// Uses the identity sum(pi) = 1, so the solution is the eigenvector of G
/// for eigenvalue 1 without any iteration.
pub fn dense_pagerank(google: &GoogleOperator, threshold: usize) -> Result<Vec<f64>, OperatorError> {
    let n = google.n();
    if n > threshold {
        return Err(OperatorError::DenseThresholdExceeded { n, threshold });
    }
    let p = google.stochastic().to_dense();
    let alpha = google.alpha();
    let a = DMatrix::identity(n, n) - p.transpose() * alpha;
    let b = DVector::from_element(n, (1.0 - alpha) / n as f64);
    let x = a
        .lu()
        .solve(&b)
        .expect("I - alpha P^T is invertible for alpha < 1");
    // Renormalize away the last few ulps of mass drift.
    let total: f64 = x.iter().sum();
    Ok(x.iter().map(|v| v / total).collect())
}

/// Two smallest eigenpairs of a symmetric matrix.
pub fn symmetric_lowest_two(m: &DMatrix<f64>) -> (f64, f64, Vec<f64>, Vec<f64>) {
    let eig = m.clone().symmetric_eigen();
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .expect("eigenvalues are finite")
    });
    let (i1, i2) = (idx[0], idx[1]);
    (
        eig.eigenvalues[i1],
        eig.eigenvalues[i2],
        eig.eigenvectors.column(i1).iter().copied().collect(),
        eig.eigenvectors.column(i2).iter().copied().collect(),
    )
}

/// Largest absolute eigenvalue of a symmetric matrix (its spectral norm).
pub fn symmetric_spectral_norm(m: &DMatrix<f64>) -> f64 {
    let eig = m.clone().symmetric_eigen();
    eig.eigenvalues.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()))
}

/// Spectral norm (largest singular value) of a general square matrix.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    // sigma_max(M)^2 = lambda_max(M^T M); stay on the symmetric eigenpath,
    // which is faster and more robust here than full SVD.
    let mtm = m.transpose() * m;
    let sym = (mtm.transpose() + mtm) * 0.5;
    symmetric_spectral_norm(&sym).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{uniform_random_graph, worst_case_graph};
    use crate::pagerank::{power_method, worst_case_closed_form};

    #[test]
    fn dense_pagerank_matches_power_method() {
        let g = uniform_random_graph(24, 60, 5).unwrap();
        let op = GoogleOperator::from_graph(&g, 0.85).unwrap();
        let direct = dense_pagerank(&op, 64).unwrap();
        let iterated = power_method(&op, 1e-13, 10_000).unwrap();
        let l1: f64 = direct
            .iter()
            .zip(&iterated.pi)
            .map(|(a, b)| (a - b).abs())
            .sum();
        assert!(l1 < 1e-8, "L1 distance {l1}");
    }

    #[test]
    fn dense_pagerank_matches_closed_form() {
        let g = worst_case_graph(6).unwrap();
        let op = GoogleOperator::from_graph(&g, 0.85).unwrap();
        let direct = dense_pagerank(&op, 64).unwrap();
        for (a, b) in direct.iter().zip(worst_case_closed_form(6, 0.85)) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn dense_hamiltonian_matches_operator_apply() {
        use crate::hamiltonian::HamiltonianOperator;
        use rand::{Rng, SeedableRng};
        let g = uniform_random_graph(20, 55, 8).unwrap();
        let op = GoogleOperator::from_graph(&g, 0.85).unwrap();
        let h_op = HamiltonianOperator::new(&op, 0.37).unwrap();
        let hd = dense_hamiltonian(&op, 0.37, 64).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let x: Vec<f64> = (0..20).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let want = &hd * DVector::from_column_slice(&x);
        let got = h_op.apply(&x).unwrap();
        for i in 0..20 {
            assert!((want[i] - got[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn lambda_matrix_identity_case() {
        let g = worst_case_graph(2).unwrap();
        let op = GoogleOperator::from_graph(&g, 0.85).unwrap();
        let m = dense_lambda_matrix(&op, 16).unwrap();
        assert!((symmetric_spectral_norm(&m) - 0.9775).abs() < 1e-12);
    }

    #[test]
    fn doubly_stochastic_google_has_unit_norm() {
        // P = I and the 2-cycle are doubly stochastic, so ||G||_2 = 1.
        for text in ["n 2\n0 0\n1 1", "n 2\n0 1\n1 0"] {
            let g = crate::graph::DirectedGraph::load_edge_list(text).unwrap();
            let op = GoogleOperator::from_graph(&g, 0.85).unwrap();
            let gd = op.materialize_dense(16).unwrap();
            assert!((spectral_norm(&gd) - 1.0).abs() < 1e-8);
        }
    }
}
