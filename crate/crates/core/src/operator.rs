//! Matrix-free symmetric operators and power iteration on them.

use crate::util::{dot, normalize};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A real symmetric operator given only by its action on vectors.
pub trait SymmetricOperator {
    fn dim(&self) -> usize;
    fn apply_into(&self, x: &[f64], y: &mut [f64]);

    fn apply_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.apply_into(x, &mut y);
        y
    }
}

/// y = scale * (op x) + shift * x. Used to make a spectrum single-signed
/// before power iteration (e.g. M + I, or cI - M).
pub struct ShiftedOperator<'a, O: SymmetricOperator> {
    pub op: &'a O,
    pub scale: f64,
    pub shift: f64,
}

impl<O: SymmetricOperator> SymmetricOperator for ShiftedOperator<'_, O> {
    fn dim(&self) -> usize {
        self.op.dim()
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.op.apply_into(x, y);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = self.scale * *yi + self.shift * xi;
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PowerConfig {
    /// Tolerance on the (extrapolated) Rayleigh-quotient error.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for PowerConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 100_000,
            seed: 0x5EED,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PowerOutcome {
    /// Rayleigh-quotient estimate of the dominant eigenvalue.
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Power iteration for the dominant eigenvalue of a positive-semidefinite
/// symmetric operator.
///
/// Convergence is declared on the Rayleigh quotient, not the iterate: the
/// quotient converges at the squared rate and survives a nearly degenerate
/// dominant pair. Successive quotient changes are extrapolated geometrically
/// (err ~ d*r/(1-r)) so a slowly contracting tail does not trigger a
/// premature stop.
pub fn power_dominant<O: SymmetricOperator>(op: &O, cfg: &PowerConfig) -> PowerOutcome {
    let n = op.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    normalize(&mut x);
    let mut y = vec![0.0; n];
    let mut rho_prev = f64::NAN;
    let mut delta_prev = f64::NAN;
    let mut calm_steps = 0usize;
    for it in 1..=cfg.max_iter {
        op.apply_into(&x, &mut y);
        let rho = dot(&x, &y);
        let norm = normalize(&mut y);
        if norm < 1e-300 {
            // Operator annihilates the iterate: dominant eigenvalue is 0 on
            // the remaining subspace.
            return PowerOutcome {
                value: rho,
                iterations: it,
                converged: true,
            };
        }
        std::mem::swap(&mut x, &mut y);
        if rho_prev.is_finite() {
            let delta = (rho - rho_prev).abs();
            let settled = if delta == 0.0 {
                true
            } else if delta_prev.is_finite() && delta_prev > 0.0 {
                let r = (delta / delta_prev).min(0.999_999);
                delta <= cfg.tol && delta * r / (1.0 - r) <= cfg.tol
            } else {
                false
            };
            calm_steps = if settled { calm_steps + 1 } else { 0 };
            if calm_steps >= 3 {
                return PowerOutcome {
                    value: rho,
                    iterations: it,
                    converged: true,
                };
            }
            delta_prev = delta;
        }
        rho_prev = rho;
    }
    PowerOutcome {
        value: rho_prev,
        iterations: cfg.max_iter,
        converged: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct DiagOp(Vec<f64>);

    impl SymmetricOperator for DiagOp {
        fn dim(&self) -> usize {
            self.0.len()
        }
        fn apply_into(&self, x: &[f64], y: &mut [f64]) {
            for i in 0..x.len() {
                y[i] = self.0[i] * x[i];
            }
        }
    }

    #[test]
    fn finds_dominant_diagonal_entry() {
        let op = DiagOp(vec![0.3, 2.5, 1.0, 0.1]);
        let out = power_dominant(&op, &PowerConfig::default());
        assert!(out.converged);
        assert!((out.value - 2.5).abs() < 1e-9, "got {}", out.value);
    }

    #[test]
    fn immediate_convergence_on_multiple_of_identity() {
        let op = DiagOp(vec![4.0; 16]);
        let out = power_dominant(&op, &PowerConfig::default());
        assert!(out.converged);
        assert!((out.value - 4.0).abs() < 1e-12);
        assert!(out.iterations < 10);
    }

    #[test]
    fn near_degenerate_dominant_pair() {
        let mut d = vec![1.0; 30];
        d[0] = 3.0;
        d[1] = 3.0 - 1e-9;
        let op = DiagOp(d);
        let out = power_dominant(&op, &PowerConfig::default());
        assert!(out.converged);
        assert!((out.value - 3.0).abs() < 1e-8, "got {}", out.value);
    }
}
