//! Symmetric tridiagonal eigensolves: Sturm-sequence bisection for
//! eigenvalues by index, and inverse iteration with partial pivoting for
//! eigenvectors. This is the small dense kernel behind the Lanczos path.

/// Number of eigenvalues of the tridiagonal (d, e) strictly below `x`,
/// from the signs of the LDL^T pivots (Sturm sequence).
pub fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let n = d.len();
    let mut count = 0;
    let mut q = 1.0f64;
    for i in 0..n {
        let ei2 = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] };
        q = if q.abs() < 1e-300 {
            d[i] - x - ei2 / 1e-300_f64.copysign(q)
        } else {
            d[i] - x - ei2 / q
        };
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
pub fn eigenvalue_by_index(d: &[f64], e: &[f64], k: usize) -> f64 {
    let n = d.len();
    assert!(k < n);
    if n == 1 {
        return d[0];
    }
    // Gershgorin interval.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let right = if i < n - 1 { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - left - right);
        hi = hi.max(d[i] + left + right);
    }
    let scale = lo.abs().max(hi.abs()).max(1.0);
    lo -= 1e-12 * scale;
    hi += 1e-12 * scale;
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if sturm_count(d, e, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * scale {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Solves (T - lambda I) y = rhs in place with partial pivoting. The factor
/// arrays are rebuilt per call; sizes here are Lanczos subspace dimensions,
/// so this stays cheap.
fn solve_shifted(d: &[f64], e: &[f64], lambda: f64, rhs: &mut [f64]) {
    let n = d.len();
    if n == 1 {
        let p = d[0] - lambda;
        rhs[0] /= if p.abs() < 1e-300 { 1e-300_f64.copysign(p) } else { p };
        return;
    }
    // Row bands after elimination: p (diag), q (super), r (super-super).
    let mut p = vec![0.0; n];
    let mut q = vec![0.0; n];
    let mut r = vec![0.0; n];
    p[0] = d[0] - lambda;
    q[0] = e[0];
    for i in 0..n - 1 {
        // Incoming row i+1 of the shifted matrix: (e[i], d[i+1]-lambda, e[i+1]).
        let (mut a1, mut a2, mut a3) = (e[i], d[i + 1] - lambda, if i + 2 < n { e[i + 1] } else { 0.0 });
        if p[i].abs() < a1.abs() {
            // Swap pivot row with the incoming row.
            std::mem::swap(&mut p[i], &mut a1);
            let (old_q, old_r) = (q[i], r[i]);
            q[i] = a2;
            r[i] = a3;
            a2 = old_q;
            a3 = old_r;
            rhs.swap(i, i + 1);
        }
        let piv = if p[i].abs() < 1e-300 { 1e-300_f64.copysign(p[i]) } else { p[i] };
        let m = a1 / piv;
        p[i + 1] = a2 - m * q[i];
        q[i + 1] = a3 - m * r[i];
        r[i + 1] = 0.0;
        rhs[i + 1] -= m * rhs[i];
    }
    for i in (0..n).rev() {
        let mut v = rhs[i];
        if i + 1 < n {
            v -= q[i] * rhs[i + 1];
        }
        if i + 2 < n {
            v -= r[i] * rhs[i + 2];
        }
        let piv = if p[i].abs() < 1e-300 { 1e-300_f64.copysign(p[i]) } else { p[i] };
        rhs[i] = v / piv;
    }
}

/// Eigenvector for an eigenvalue found by bisection, via a few inverse
/// iteration sweeps. `orthogonal_to` deflates an already-computed vector of
/// a clustered neighbor.
pub fn eigenvector(d: &[f64], e: &[f64], lambda: f64, orthogonal_to: Option<&[f64]>) -> Vec<f64> {
    let n = d.len();
    let mut y: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.3 * ((i as f64 * 0.7391).sin()))
        .collect();
    normalize(&mut y);
    for _ in 0..4 {
        solve_shifted(d, e, lambda, &mut y);
        if let Some(other) = orthogonal_to {
            let c = dot(&y, other);
            for i in 0..n {
                y[i] -= c * other[i];
            }
        }
        if normalize(&mut y) == 0.0 {
            // Deflation removed everything: restart from a shifted seed.
            y = (0..n).map(|i| ((i as f64 + 1.3) * 1.9137).cos()).collect();
            normalize(&mut y);
        }
    }
    y
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    // T = diag(2,2,2) with off-diagonal -1: eigenvalues 2 - sqrt(2), 2, 2 + sqrt(2).
    const D: [f64; 3] = [2.0, 2.0, 2.0];
    const E: [f64; 2] = [-1.0, -1.0];

    #[test]
    fn counts_and_eigenvalues() {
        assert_eq!(sturm_count(&D, &E, 0.0), 0);
        assert_eq!(sturm_count(&D, &E, 1.0), 1);
        assert_eq!(sturm_count(&D, &E, 2.5), 2);
        assert_eq!(sturm_count(&D, &E, 4.0), 3);
        let sqrt2 = 2.0f64.sqrt();
        assert!((eigenvalue_by_index(&D, &E, 0) - (2.0 - sqrt2)).abs() < 1e-12);
        assert!((eigenvalue_by_index(&D, &E, 1) - 2.0).abs() < 1e-12);
        assert!((eigenvalue_by_index(&D, &E, 2) - (2.0 + sqrt2)).abs() < 1e-12);
    }

    #[test]
    fn eigenvector_residual_small() {
        let lam = eigenvalue_by_index(&D, &E, 2);
        let v = eigenvector(&D, &E, lam, None);
        // Residual of (T - lam) v.
        let tv = [
            D[0] * v[0] + E[0] * v[1],
            E[0] * v[0] + D[1] * v[1] + E[1] * v[2],
            E[1] * v[1] + D[2] * v[2],
        ];
        let res: f64 = tv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - lam * b).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(res < 1e-10, "residual {res}");
    }

    #[test]
    fn clustered_pair_is_separated() {
        // diag(1, 1+1e-12, 5): the bottom two are a tight cluster.
        let d = [1.0, 1.0 + 1e-12, 5.0];
        let e = [0.0, 0.0];
        let l0 = eigenvalue_by_index(&d, &e, 0);
        let l1 = eigenvalue_by_index(&d, &e, 1);
        assert!(l0 <= l1);
        let v0 = eigenvector(&d, &e, l0, None);
        let v1 = eigenvector(&d, &e, l1, Some(&v0));
        assert!(dot(&v0, &v1).abs() < 1e-8);
    }
}
