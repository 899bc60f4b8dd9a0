//! Searches over unit vectors for a fixed complex structure: holomorphic
//! sectional maximizers, their first- and second-order conditions, and the
//! minimum of orthogonal bisectional curvature.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use super::stiefel::Objective;
use super::{argmin, multistart, FrameSearchResult, OptimizerConfig, SearchPoint};
use crate::complex::ComplexStructure;
use crate::error::{CurvError, Result};
use crate::pairs::{antisym_from_pairs, wedge};
use crate::random::{rng, unit_vector};
use crate::tensor::CurvatureTensor;
use crate::tolerance;

/// Antisymmetric matrix `V` with `R(X, JX, Y, Z) = Yᵀ V Z`.
pub(crate) fn holomorphic_pair_form(
    r: &CurvatureTensor,
    x: &DVector<f64>,
    jx: &DVector<f64>,
) -> DMatrix<f64> {
    antisym_from_pairs(r.dim(), &(r.pair_matrix() * wedge(x, jx)))
}

/// Orthonormal basis (as columns) of the orthogonal complement of `span(vs)`.
pub(crate) fn complement_basis(n: usize, vs: &[DVector<f64>]) -> DMatrix<f64> {
    let mut p = DMatrix::<f64>::identity(n, n);
    let span = super::stiefel::qf(&DMatrix::from_columns(vs));
    p -= &span * span.transpose();
    let eig = p.symmetric_eigen();
    let cols: Vec<DVector<f64>> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.5)
        .map(|(i, _)| eig.eigenvectors.column(i).into_owned())
        .collect();
    DMatrix::from_columns(&cols)
}

/// Extreme eigenpairs of `Yᵀ S Y` restricted to the column span of `basis`.
fn restricted_extremes(
    s: &DMatrix<f64>,
    basis: &DMatrix<f64>,
) -> ((f64, DVector<f64>), (f64, DVector<f64>)) {
    let sym = (s + s.transpose()) * 0.5;
    let reduced = basis.transpose() * sym * basis;
    let eig = reduced.symmetric_eigen();
    let (mut lo, mut hi) = (0, 0);
    for i in 0..eig.eigenvalues.len() {
        if eig.eigenvalues[i] < eig.eigenvalues[lo] {
            lo = i;
        }
        if eig.eigenvalues[i] > eig.eigenvalues[hi] {
            hi = i;
        }
    }
    let vec = |i: usize| {
        let v = basis * eig.eigenvectors.column(i);
        let norm = v.norm();
        v / norm
    };
    (
        (eig.eigenvalues[lo], vec(lo)),
        (eig.eigenvalues[hi], vec(hi)),
    )
}

struct NegHolomorphic<'a> {
    r: &'a CurvatureTensor,
    j: &'a DMatrix<f64>,
}

impl Objective for NegHolomorphic<'_> {
    fn value_grad(&self, x: &DMatrix<f64>) -> (f64, DMatrix<f64>) {
        let xv = x.column(0).into_owned();
        let jx = self.j * &xv;
        let u = holomorphic_pair_form(self.r, &xv, &jx);
        let h = xv.dot(&(&u * &jx));
        // d/dx R(x, Jx, x, Jx) = 2 U Jx - 2 Jᵀ U x
        let grad = (&u * &jx) * 2.0 - self.j.transpose() * (&u * &xv) * 2.0;
        (
            -h,
            DMatrix::from_column_slice(xv.len(), 1, (-grad).as_slice()),
        )
    }
}

fn check_structure(r: &CurvatureTensor, j: &ComplexStructure) -> Result<()> {
    if j.dim() != r.dim() {
        return Err(CurvError::DimensionMismatch {
            expected: r.dim(),
            found: j.dim(),
        });
    }
    Ok(())
}

/// Maximum of `R(X, JX, X, JX)` over unit `X`.
pub fn max_holomorphic_sectional(
    r: &CurvatureTensor,
    j: &ComplexStructure,
    cfg: &OptimizerConfig,
) -> Result<FrameSearchResult> {
    max_holomorphic_sectional_from(r, j, cfg, &[])
}

pub fn max_holomorphic_sectional_from(
    r: &CurvatureTensor,
    j: &ComplexStructure,
    cfg: &OptimizerConfig,
    warm: &[DVector<f64>],
) -> Result<FrameSearchResult> {
    cfg.validate()?;
    check_structure(r, j)?;
    let n = r.dim();
    let mut starts: Vec<DMatrix<f64>> = warm
        .iter()
        .map(|v| DMatrix::from_column_slice(n, 1, v.as_slice()))
        .collect();
    let mut e0 = DMatrix::zeros(n, 1);
    e0[(0, 0)] = 1.0;
    starts.push(e0);
    let obj = NegHolomorphic { r, j: j.matrix() };
    let runs = multistart(&obj, n, 1, &starts, cfg);
    let values: Vec<f64> = runs.iter().map(|run| run.value).collect();
    let best = &runs[argmin(&values)];
    let x = best.point.column(0).into_owned();
    Ok(FrameSearchResult {
        value: -best.value,
        point: SearchPoint::Vector(x),
        converged: best.converged,
        iterations: best.iterations,
        restart_values: values.iter().map(|v| -v).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FirstOrderReport {
    /// `R(X, JX, X, JX)`.
    pub holomorphic: f64,
    /// `max |R(X, JX, X, Y)|` over unit `Y ⊥ {X, JX}`.
    pub first_order_y: f64,
    /// `max |R(X, JX, X, JY)|` over unit `Y ⊥ {X, JX}`.
    pub first_order_jy: f64,
    /// `R(X,JX,X,JX) - 2 max R(X, JX, Y, JY)` over unit `Y ⊥ {X, JX}`; must be ≥ 0.
    pub second_order_slack: f64,
    /// Per complement basis vector: `[R(X,JX,X,Y), R(X,JX,X,JY), R(X,JX,Y,JY)]`.
    pub basis_values: Vec<[f64; 3]>,
    pub tol: f64,
    pub pass: bool,
}

/// First- and second-order conditions satisfied by a maximizer of holomorphic sectional curvature.
pub fn maximizer_first_order_check(
    r: &CurvatureTensor,
    j: &ComplexStructure,
    x: &DVector<f64>,
    tol: f64,
) -> Result<FirstOrderReport> {
    check_structure(r, j)?;
    if x.len() != r.dim() {
        return Err(CurvError::DimensionMismatch {
            expected: r.dim(),
            found: x.len(),
        });
    }
    let unit = (x.norm() - 1.0).abs();
    if unit > tolerance::FRAME {
        return Err(CurvError::ConstraintViolation {
            reason: "X must be a unit vector",
            defect: unit,
        });
    }
    let n = r.dim();
    let jm = j.matrix();
    let jx = jm * x;
    let v = holomorphic_pair_form(r, x, &jx);
    let holomorphic = x.dot(&(&v * &jx));
    // R(X,JX,X,Y) = Xᵀ V Y, R(X,JX,X,JY) = Xᵀ V J Y
    let lin_y = v.transpose() * x;
    let lin_jy = jm.transpose() * &lin_y;
    let basis = complement_basis(n, &[x.clone(), jx.clone()]);
    let proj = |w: &DVector<f64>| (basis.transpose() * w).norm();
    let vj = &v * jm;
    let (_, (qmax, _)) = restricted_extremes(&vj, &basis);

    let basis_values = basis
        .column_iter()
        .map(|y| {
            let y = y.into_owned();
            let jy = jm * &y;
            [lin_y.dot(&y), lin_y.dot(&jy), y.dot(&(&v * &jy))]
        })
        .collect();

    let first_order_y = proj(&lin_y);
    let first_order_jy = proj(&lin_jy);
    let second_order_slack = holomorphic - 2.0 * qmax;
    let pass = first_order_y <= tol && first_order_jy <= tol && second_order_slack >= -tol;
    Ok(FirstOrderReport {
        holomorphic,
        first_order_y,
        first_order_jy,
        second_order_slack,
        basis_values,
        tol,
        pass,
    })
}

/// Minimizer of `R(X, JX, ·, J·)` over unit vectors orthogonal to `X` and `JX`.
fn best_partner(r: &CurvatureTensor, jm: &DMatrix<f64>, x: &DVector<f64>) -> (f64, DVector<f64>) {
    let jx = jm * x;
    let v = holomorphic_pair_form(r, x, &jx);
    let basis = complement_basis(r.dim(), &[x.clone(), jx]);
    restricted_extremes(&(&v * jm), &basis).0
}

/// Minimum of orthogonal bisectional curvature `R(X, JX, Y, JY)` over admissible pairs.
///
/// Alternates exact minimization: for fixed `X` the optimal `Y` in the complement
/// of `span{X, JX}` is the lowest eigenvector of a quadratic form; the roles of
/// `X` and `Y` are then exchanged (the objective and constraint are symmetric).
pub fn min_orthogonal_bisectional(
    r: &CurvatureTensor,
    j: &ComplexStructure,
    cfg: &OptimizerConfig,
) -> Result<FrameSearchResult> {
    cfg.validate()?;
    check_structure(r, j)?;
    let n = r.dim();
    let jm = j.matrix();
    let runs: Vec<(f64, DVector<f64>, DVector<f64>, usize, bool)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|idx| {
            let mut x = unit_vector(&mut rng(cfg.seed.wrapping_add(idx as u64)), n);
            let (mut value, mut y) = best_partner(r, jm, &x);
            let mut iters = 0;
            let mut converged = false;
            while iters < cfg.max_iters {
                iters += 1;
                x = best_partner(r, jm, &y).1;
                let (vy, new_y) = best_partner(r, jm, &x);
                y = new_y;
                let improvement = value - vy;
                value = vy;
                if improvement.abs() <= cfg.grad_tol * value.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
            (value, x, y, iters, converged)
        })
        .collect();
    let values: Vec<f64> = runs.iter().map(|r| r.0).collect();
    let (value, x, y, iterations, converged) = runs[argmin(&values)].clone();
    Ok(FrameSearchResult {
        value,
        point: SearchPoint::Pair { x, y },
        converged,
        iterations,
        restart_values: values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_tensor_values() {
        let r = CurvatureTensor::zero(6).unwrap();
        let j = ComplexStructure::standard(6).unwrap();
        let cfg = OptimizerConfig::default().with_restarts(4);
        assert_eq!(max_holomorphic_sectional(&r, &j, &cfg).unwrap().value, 0.0);
        assert_eq!(min_orthogonal_bisectional(&r, &j, &cfg).unwrap().value, 0.0);
        let x = DVector::from_fn(6, |i, _| if i == 0 { 1.0 } else { 0.0 });
        assert!(maximizer_first_order_check(&r, &j, &x, 1e-12).unwrap().pass);
        assert!(maximizer_first_order_check(&r, &j, &(x * 2.0), 1e-12).is_err());
    }

    #[test]
    fn complement_basis_is_orthonormal_and_orthogonal() {
        let x = unit_vector(&mut rng(1), 6);
        let j = ComplexStructure::standard(6).unwrap();
        let jx = j.apply(&x);
        let b = complement_basis(6, &[x.clone(), jx.clone()]);
        assert_eq!(b.ncols(), 4);
        assert!(
            (b.transpose() * &b - DMatrix::<f64>::identity(4, 4))
                .abs()
                .max()
                < 1e-12
        );
        assert!((b.transpose() * x).norm() < 1e-12);
        assert!((b.transpose() * jx).norm() < 1e-12);
    }
}
