//! The row-stochastic transition operator P and the implicit Google operator
//! G = alpha * P^T + (1-alpha) * n^-1 * 11^T.
//!
//! Both apply directions are implemented as gathers (out-adjacency for P,
//! in-adjacency for P^T), so every output element is a fixed-order sum over
//! its own slice. Results are bit-identical run to run at any worker count,
//! and the rank-1 teleportation term is never materialized.

use crate::graph::DirectedGraph;
use crate::util::kahan_sum;
use nalgebra::DMatrix;
use thiserror::Error;

/// Default cutoff for dense materialization (overridable per call site; the
/// CLI reads GAPBENCH_DENSE_THRESHOLD).
pub const DEFAULT_DENSE_THRESHOLD: usize = 2048;

#[derive(Debug, Error, PartialEq)]
pub enum OperatorError {
    #[error("dimension mismatch: operator has n = {expected}, vector has length {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("n = {n} exceeds the dense threshold {threshold}")]
    DenseThresholdExceeded { n: usize, threshold: usize },
    #[error("damping factor must lie in [0, 1), got {0}")]
    InvalidAlpha(f64),
    #[error("interpolation parameter must lie in [0, 1], got {0}")]
    InvalidInterpolation(f64),
}

/// How rows with no out-edges are repaired to keep P stochastic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub enum DanglingPolicy {
    /// Dangling rows become uniform 1/n (the standard Google-matrix fix).
    #[default]
    Uniform,
    /// Dangling rows become a self-loop.
    SelfLoop,
}

impl std::fmt::Display for DanglingPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DanglingPolicy::Uniform => write!(f, "uniform"),
            DanglingPolicy::SelfLoop => write!(f, "self-loop"),
        }
    }
}

/// Sparse row-stochastic transition matrix with the dangling policy applied.
#[derive(Debug, Clone)]
pub struct StochasticOperator {
    n: usize,
    // Out-adjacency (CSR): targets of vertex i in out_idx[out_ptr[i]..out_ptr[i+1]].
    out_ptr: Vec<usize>,
    out_idx: Vec<u32>,
    // 1/outdeg per vertex; 0.0 marks a dangling vertex.
    inv_out: Vec<f64>,
    // In-adjacency with the source weight attached, for the transpose gather.
    in_ptr: Vec<usize>,
    in_src: Vec<u32>,
    in_w: Vec<f64>,
    dangling: Vec<u32>,
    policy: DanglingPolicy,
}

/// Builds P from a graph: P[i][j] = 1/outdeg(i) for each edge (i, j), with
/// dangling rows repaired per `policy`.
pub fn transition_matrix(g: &DirectedGraph, policy: DanglingPolicy) -> StochasticOperator {
    let n = g.n();
    let out_deg = g.out_degrees();
    let inv_out: Vec<f64> = out_deg
        .iter()
        .map(|&d| if d == 0 { 0.0 } else { 1.0 / d as f64 })
        .collect();
    let mut out_ptr = vec![0usize; n + 1];
    for &(u, _) in g.edges() {
        out_ptr[u as usize + 1] += 1;
    }
    for i in 0..n {
        out_ptr[i + 1] += out_ptr[i];
    }
    let mut out_idx = vec![0u32; g.m()];
    let mut cursor = out_ptr.clone();
    for &(u, v) in g.edges() {
        out_idx[cursor[u as usize]] = v;
        cursor[u as usize] += 1;
    }
    let mut in_ptr = vec![0usize; n + 1];
    for &(_, v) in g.edges() {
        in_ptr[v as usize + 1] += 1;
    }
    for i in 0..n {
        in_ptr[i + 1] += in_ptr[i];
    }
    let mut in_src = vec![0u32; g.m()];
    let mut in_w = vec![0f64; g.m()];
    let mut cursor = in_ptr.clone();
    for &(u, v) in g.edges() {
        in_src[cursor[v as usize]] = u;
        in_w[cursor[v as usize]] = inv_out[u as usize];
        cursor[v as usize] += 1;
    }
    let dangling: Vec<u32> = (0..n as u32).filter(|&i| out_deg[i as usize] == 0).collect();
    StochasticOperator {
        n,
        out_ptr,
        out_idx,
        inv_out,
        in_ptr,
        in_src,
        in_w,
        dangling,
        policy,
    }
}

impl StochasticOperator {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn policy(&self) -> DanglingPolicy {
        self.policy
    }

    pub fn dangling(&self) -> &[u32] {
        &self.dangling
    }

    fn check_dim(&self, len: usize) -> Result<(), OperatorError> {
        if len != self.n {
            return Err(OperatorError::DimensionMismatch {
                expected: self.n,
                got: len,
            });
        }
        Ok(())
    }

    /// y = P x in O(n + m).
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>, OperatorError> {
        self.check_dim(x.len())?;
        let mut y = vec![0.0; self.n];
        self.apply_into(x, &mut y);
        Ok(y)
    }

    pub(crate) fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        let dangling_value = match self.policy {
            DanglingPolicy::Uniform => kahan_sum(x) / self.n as f64,
            DanglingPolicy::SelfLoop => 0.0,
        };
        for i in 0..self.n {
            let w = self.inv_out[i];
            if w == 0.0 {
                y[i] = match self.policy {
                    DanglingPolicy::Uniform => dangling_value,
                    DanglingPolicy::SelfLoop => x[i],
                };
            } else {
                let mut acc = 0.0;
                for &j in &self.out_idx[self.out_ptr[i]..self.out_ptr[i + 1]] {
                    acc += x[j as usize];
                }
                y[i] = acc * w;
            }
        }
    }

    /// y = P^T x in O(n + m).
    pub fn transpose_apply(&self, x: &[f64]) -> Result<Vec<f64>, OperatorError> {
        self.check_dim(x.len())?;
        let mut y = vec![0.0; self.n];
        self.transpose_apply_into(x, &mut y);
        Ok(y)
    }

    pub(crate) fn transpose_apply_into(&self, x: &[f64], y: &mut [f64]) {
        let uniform_part = match self.policy {
            DanglingPolicy::Uniform => {
                let mut mass = 0.0;
                for &d in &self.dangling {
                    mass += x[d as usize];
                }
                mass / self.n as f64
            }
            DanglingPolicy::SelfLoop => 0.0,
        };
        for j in 0..self.n {
            let lo = self.in_ptr[j];
            let hi = self.in_ptr[j + 1];
            let mut acc = 0.0;
            for k in lo..hi {
                acc += x[self.in_src[k] as usize] * self.in_w[k];
            }
            y[j] = acc + uniform_part;
        }
        if self.policy == DanglingPolicy::SelfLoop {
            for &d in &self.dangling {
                y[d as usize] += x[d as usize];
            }
        }
    }

    /// Row sums after the dangling policy; 1 within rounding for every row.
    pub fn row_sums(&self) -> Vec<f64> {
        let ones = vec![1.0; self.n];
        self.apply(&ones).expect("dimension is consistent")
    }

    /// Dense P for oracle comparisons at small n.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.n;
        let mut p = DMatrix::zeros(n, n);
        for i in 0..n {
            let w = self.inv_out[i];
            if w == 0.0 {
                match self.policy {
                    DanglingPolicy::Uniform => {
                        for j in 0..n {
                            p[(i, j)] = 1.0 / n as f64;
                        }
                    }
                    DanglingPolicy::SelfLoop => p[(i, i)] = 1.0,
                }
            } else {
                for &j in &self.out_idx[self.out_ptr[i]..self.out_ptr[i + 1]] {
                    p[(i, j as usize)] = w;
                }
            }
        }
        p
    }
}

/// Implicit Google operator G = alpha P^T + (1-alpha) n^-1 11^T.
#[derive(Debug, Clone)]
pub struct GoogleOperator {
    stochastic: StochasticOperator,
    alpha: f64,
}

impl GoogleOperator {
    pub fn new(stochastic: StochasticOperator, alpha: f64) -> Result<Self, OperatorError> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(OperatorError::InvalidAlpha(alpha));
        }
        Ok(Self { stochastic, alpha })
    }

    /// Convenience constructor from a graph with the uniform dangling fix.
    pub fn from_graph(g: &DirectedGraph, alpha: f64) -> Result<Self, OperatorError> {
        Self::new(transition_matrix(g, DanglingPolicy::Uniform), alpha)
    }

    pub fn n(&self) -> usize {
        self.stochastic.n()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn stochastic(&self) -> &StochasticOperator {
        &self.stochastic
    }

    /// y = G x = alpha P^T x + (1-alpha) n^-1 (sum x) 1, in O(n + m).
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>, OperatorError> {
        self.stochastic.check_dim(x.len())?;
        let mut y = vec![0.0; self.n()];
        self.apply_into(x, &mut y);
        Ok(y)
    }

    pub(crate) fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.stochastic.transpose_apply_into(x, y);
        let teleport = (1.0 - self.alpha) * kahan_sum(x) / self.n() as f64;
        for v in y.iter_mut() {
            *v = self.alpha * *v + teleport;
        }
    }

    /// y = G^T x = alpha P x + (1-alpha) n^-1 (sum x) 1.
    pub fn transpose_apply(&self, x: &[f64]) -> Result<Vec<f64>, OperatorError> {
        self.stochastic.check_dim(x.len())?;
        let mut y = vec![0.0; self.n()];
        self.transpose_apply_into(x, &mut y);
        Ok(y)
    }

    pub(crate) fn transpose_apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.stochastic.apply_into(x, y);
        let teleport = (1.0 - self.alpha) * kahan_sum(x) / self.n() as f64;
        for v in y.iter_mut() {
            *v = self.alpha * *v + teleport;
        }
    }

    /// Exact dense G for the dense eigensolver and oracle tests.
    pub fn materialize_dense(&self, threshold: usize) -> Result<DMatrix<f64>, OperatorError> {
        let n = self.n();
        if n > threshold {
            return Err(OperatorError::DenseThresholdExceeded { n, threshold });
        }
        let p = self.stochastic.to_dense();
        let teleport = (1.0 - self.alpha) / n as f64;
        let mut g = DMatrix::from_element(n, n, teleport);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] += self.alpha * p[(j, i)];
            }
        }
        Ok(g)
    }
}
