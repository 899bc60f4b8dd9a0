//! Riemannian gradient descent on the Stiefel manifold `V_k(ℝⁿ)` of `n × k`
//! matrices with orthonormal columns: projected gradient, QR retraction,
//! Armijo backtracking seeded by a Barzilai–Borwein step.

use nalgebra::DMatrix;

use super::OptimizerConfig;

/// Smooth objective on `n × k` matrices.
pub trait Objective: Sync {
    /// Value and Euclidean gradient at `x`.
    fn value_grad(&self, x: &DMatrix<f64>) -> (f64, DMatrix<f64>);

    fn value(&self, x: &DMatrix<f64>) -> f64 {
        self.value_grad(x).0
    }
}

/// Q factor of the thin QR decomposition with the sign convention `diag(R) > 0`.
pub fn qf(a: &DMatrix<f64>) -> DMatrix<f64> {
    let qr = a.clone().qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..q.ncols() {
        if r[(c, c)] < 0.0 {
            q.column_mut(c).neg_mut();
        }
    }
    q
}

/// `G - X sym(XᵀG)`: projection of an ambient gradient onto the tangent space at `x`.
pub fn tangent_project(x: &DMatrix<f64>, g: &DMatrix<f64>) -> DMatrix<f64> {
    let xtg = x.transpose() * g;
    let sym = (&xtg + xtg.transpose()) * 0.5;
    g - x * sym
}

pub fn retract(x: &DMatrix<f64>, step: &DMatrix<f64>) -> DMatrix<f64> {
    qf(&(x + step))
}

#[derive(Clone, Debug)]
pub struct LocalRun {
    pub point: DMatrix<f64>,
    pub value: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective after each accepted step, starting with the initial value.
    pub history: Vec<f64>,
}

const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-20;

pub fn descend(obj: &dyn Objective, x0: &DMatrix<f64>, cfg: &OptimizerConfig) -> LocalRun {
    let mut x = qf(x0);
    let (mut f, g) = obj.value_grad(&x);
    let mut rg = tangent_project(&x, &g);
    let mut history = vec![f];
    let mut step = cfg.step;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < cfg.max_iters {
        let gnorm2 = rg.norm_squared();
        if gnorm2.sqrt() <= cfg.grad_tol {
            converged = true;
            break;
        }
        let mut t = step;
        let accepted = loop {
            let cand = retract(&x, &(&rg * -t));
            let fc = obj.value(&cand);
            if fc.is_finite() && fc <= f - ARMIJO * t * gnorm2 {
                break Some((cand, fc));
            }
            t *= 0.5;
            if t < MIN_STEP {
                break None;
            }
        };
        let Some((x_new, f_new)) = accepted else {
            break;
        };
        iterations += 1;
        let (_, g_new) = obj.value_grad(&x_new);
        let rg_new = tangent_project(&x_new, &g_new);

        let s = &x_new - &x;
        let y = &rg_new - &rg;
        let sy = s.dot(&y);
        step = if sy > 0.0 {
            (s.norm_squared() / sy).clamp(1e-8, 1e3 * cfg.step.max(1.0))
        } else {
            cfg.step
        };

        x = x_new;
        f = f_new;
        rg = rg_new;
        history.push(f);
    }
    let grad_norm = rg.norm();
    if grad_norm <= cfg.grad_tol {
        converged = true;
    }
    LocalRun {
        point: x,
        value: f,
        grad_norm,
        iterations,
        converged,
        history,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{gaussian_matrix, rng};

    /// Rayleigh quotient tr(XᵀAX) on St(n,k): minimum is the sum of the k smallest eigenvalues.
    struct Rayleigh(DMatrix<f64>);

    impl Objective for Rayleigh {
        fn value_grad(&self, x: &DMatrix<f64>) -> (f64, DMatrix<f64>) {
            let ax = &self.0 * x;
            ((x.transpose() * &ax).trace(), ax * 2.0)
        }
    }

    #[test]
    fn finds_smallest_eigenspace() {
        let mut g = rng(4);
        let b = gaussian_matrix(&mut g, 6, 6);
        let a = &b * b.transpose();
        let mut eig: Vec<f64> = a
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .collect();
        eig.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let cfg = OptimizerConfig {
            max_iters: 5000,
            ..OptimizerConfig::default()
        };
        let run = descend(&Rayleigh(a), &gaussian_matrix(&mut g, 6, 2), &cfg);
        assert!(
            (run.value - eig[0] - eig[1]).abs() < 1e-9,
            "{} vs {}",
            run.value,
            eig[0] + eig[1]
        );
        assert!(run.history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn qf_has_orthonormal_columns_and_positive_r() {
        let mut g = rng(8);
        let a = gaussian_matrix(&mut g, 7, 4);
        let q = qf(&a);
        assert!(
            (q.transpose() * &q - DMatrix::<f64>::identity(4, 4))
                .abs()
                .max()
                < 1e-14
        );
        let r = q.transpose() * &a;
        for c in 0..4 {
            assert!(r[(c, c)] > 0.0);
        }
    }
}
