//! Optimization over orthonormal four-frames and unit vectors.

pub mod diagnostics;
pub mod holomorphic;
pub mod isotropic;
pub mod stiefel;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CurvError, Result};
use crate::frame::FourFrame;
use crate::random::{rng, stiefel_point};

pub use diagnostics::{
    boundary_q_check, qk_q_bound_check, BoundaryReport, CheckStatus, QkBoundReport,
};
pub use holomorphic::{
    max_holomorphic_sectional, maximizer_first_order_check, min_orthogonal_bisectional,
    FirstOrderReport,
};
pub use isotropic::{
    min_isotropic, min_isotropic_from, pinched, pinching_constant, shift_into_cone,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub grad_tol: f64,
    /// Initial step of the backtracking line search.
    pub step: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 500,
            grad_tol: 1e-8,
            step: 0.1,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 || self.max_iters < 1 || !(self.grad_tol > 0.0) || !(self.step > 0.0) {
            return Err(CurvError::InvalidConfig(format!(
                "restarts, max_iters, grad_tol and step must be positive: {self:?}"
            )));
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchPoint {
    Frame(FourFrame),
    Vector(DVector<f64>),
    Pair { x: DVector<f64>, y: DVector<f64> },
}

impl SearchPoint {
    pub fn frame(&self) -> Option<&FourFrame> {
        match self {
            SearchPoint::Frame(f) => Some(f),
            _ => None,
        }
    }

    pub fn vector(&self) -> Option<&DVector<f64>> {
        match self {
            SearchPoint::Vector(v) => Some(v),
            SearchPoint::Pair { x, .. } => Some(x),
            SearchPoint::Frame(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FrameSearchResult {
    pub value: f64,
    pub point: SearchPoint,
    pub converged: bool,
    pub iterations: usize,
    pub restart_values: Vec<f64>,
}

/// One local run per start, executed in parallel. Start `i < starts.len()` uses
/// the supplied matrix; the remaining `cfg.restarts` starts are Haar-random with
/// seed `cfg.seed + restart index`. Returns the runs in start order.
pub(crate) fn multistart(
    obj: &dyn stiefel::Objective,
    n: usize,
    k: usize,
    starts: &[DMatrix<f64>],
    cfg: &OptimizerConfig,
) -> Vec<stiefel::LocalRun> {
    let total = starts.len() + cfg.restarts;
    (0..total)
        .into_par_iter()
        .map(|idx| {
            let x0 = if idx < starts.len() {
                starts[idx].clone()
            } else {
                let r = (idx - starts.len()) as u64;
                stiefel_point(&mut rng(cfg.seed.wrapping_add(r)), n, k)
            };
            stiefel::descend(obj, &x0, cfg)
        })
        .collect()
}

/// Index of the smallest value; ties go to the lowest index.
pub(crate) fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    best
}
