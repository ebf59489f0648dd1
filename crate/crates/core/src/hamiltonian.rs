//! The interpolation Hamiltonian
//! H(s) = s (I-G)^T (I-G) + (1-s) (I - n^-1 11^T)
//! as an implicit symmetric PSD operator, and the norm
//! Lambda = || (I-G)^T (I-G) - I + n^-1 11^T ||_2 of the difference between
//! the two endpoint operators.

use crate::google::{GoogleOperator, OperatorError};
use crate::operator::{power_dominant, PowerConfig, PowerOutcome, ShiftedOperator, SymmetricOperator};
use crate::util::mean;

/// H(s) for a fixed interpolation parameter s in [0, 1].
///
/// Applies cost O(n + m); the operator is never materialized here. Pure and
/// safe to apply concurrently.
#[derive(Debug, Clone)]
pub struct HamiltonianOperator<'a> {
    google: &'a GoogleOperator,
    s: f64,
}

impl<'a> HamiltonianOperator<'a> {
    pub fn new(google: &'a GoogleOperator, s: f64) -> Result<Self, OperatorError> {
        if !(0.0..=1.0).contains(&s) {
            return Err(OperatorError::InvalidInterpolation(s));
        }
        Ok(Self { google, s })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn google(&self) -> &GoogleOperator {
        self.google
    }

    pub fn n(&self) -> usize {
        self.google.n()
    }

    /// y = H(s) x.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>, OperatorError> {
        if x.len() != self.n() {
            return Err(OperatorError::DimensionMismatch {
                expected: self.n(),
                got: x.len(),
            });
        }
        Ok(self.apply_vec(x))
    }
}

impl SymmetricOperator for HamiltonianOperator<'_> {
    fn dim(&self) -> usize {
        self.n()
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n();
        // w = (I - G) x
        let mut w = vec![0.0; n];
        self.google.apply_into(x, &mut w);
        for i in 0..n {
            w[i] = x[i] - w[i];
        }
        // y = (I - G)^T w
        self.google.transpose_apply_into(&w, y);
        for i in 0..n {
            y[i] = w[i] - y[i];
        }
        let m = mean(x);
        for i in 0..n {
            y[i] = self.s * y[i] + (1.0 - self.s) * (x[i] - m);
        }
    }
}

/// The difference operator M = (I-G)^T (I-G) - I + n^-1 11^T whose spectral
/// norm is Lambda.
pub struct LambdaOperator<'a> {
    google: &'a GoogleOperator,
}

impl<'a> LambdaOperator<'a> {
    pub fn new(google: &'a GoogleOperator) -> Self {
        Self { google }
    }
}

impl SymmetricOperator for LambdaOperator<'_> {
    fn dim(&self) -> usize {
        self.google.n()
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        let n = self.google.n();
        let mut w = vec![0.0; n];
        self.google.apply_into(x, &mut w);
        for i in 0..n {
            w[i] = x[i] - w[i];
        }
        self.google.transpose_apply_into(&w, y);
        let m = mean(x);
        for i in 0..n {
            y[i] = (w[i] - y[i]) - x[i] + m;
        }
    }
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct LambdaEstimate {
    /// Spectral norm estimate of M.
    pub value: f64,
    pub iterations: usize,
    /// False when an iteration cap was hit; `value` is then the best estimate.
    pub converged: bool,
}

/// Spectral norm of M by symmetric power iteration.
///
/// M is symmetric, so ||M||_2 = max(lambda_max, -lambda_min). Both extremes
/// come from power runs on operators made PSD by certified shifts: M + I
/// (M >= -I always, because (I-G)^T(I-G) >= 0 and the projector is a
/// contraction), then cI - M with c just above the lambda_max estimate.
pub fn lambda_norm(google: &GoogleOperator, tol: f64) -> LambdaEstimate {
    lambda_norm_with(
        google,
        &PowerConfig {
            tol,
            ..PowerConfig::default()
        },
    )
}

pub fn lambda_norm_with(google: &GoogleOperator, cfg: &PowerConfig) -> LambdaEstimate {
    let m = LambdaOperator::new(google);
    let up: PowerOutcome = power_dominant(
        &ShiftedOperator {
            op: &m,
            scale: 1.0,
            shift: 1.0,
        },
        cfg,
    );
    let lambda_max = up.value - 1.0;
    let c = lambda_max + 1.0;
    let down = power_dominant(
        &ShiftedOperator {
            op: &m,
            scale: -1.0,
            shift: c,
        },
        &PowerConfig {
            seed: cfg.seed.wrapping_add(1),
            ..*cfg
        },
    );
    let lambda_min = c - down.value;
    LambdaEstimate {
        value: lambda_max.max(-lambda_min).max(0.0),
        iterations: up.iterations + down.iterations,
        converged: up.converged && down.converged,
    }
}
