//! Boundary and bound diagnostics built on the searches.

use nalgebra::{DVector, Matrix3, Vector3};
use serde::Serialize;

use super::holomorphic::{
    complement_basis, holomorphic_pair_form, max_holomorphic_sectional_from,
    maximizer_first_order_check,
};
use super::{FirstOrderReport, OptimizerConfig};
use crate::bform::qform;
use crate::complex::{sphere_design_26, QuaternionTriple};
use crate::error::{CurvError, Result};
use crate::frame::FourFrame;
use crate::isotropic::{five_term, isotropic_curvature};
use crate::spaces::hyperkahler_residual;
use crate::tensor::CurvatureTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inapplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub isotropic_value: f64,
    pub min_isotropic_certificate: f64,
    /// The five-term combination evaluated on `Q(R)` at the frame.
    pub q_combination: Option<f64>,
    pub tol: f64,
    pub status: CheckStatus,
}

/// At a frame where a tensor of nonnegative isotropic curvature attains zero,
/// the same five-term combination of `Q(R)` must be nonnegative.
///
/// `min_isotropic_certificate` is a lower bound on the minimum isotropic curvature
/// of `R` (typically a [`super::min_isotropic`] value). Frames off the boundary, or
/// tensors outside the cone, give an `Inapplicable` report.
pub fn boundary_q_check(
    r: &CurvatureTensor,
    frame: &FourFrame,
    min_isotropic_certificate: f64,
    tol: f64,
) -> Result<BoundaryReport> {
    let iso = isotropic_curvature(r, frame)?;
    let mut report = BoundaryReport {
        isotropic_value: iso,
        min_isotropic_certificate,
        q_combination: None,
        tol,
        status: CheckStatus::Inapplicable,
    };
    if iso.abs() > tol || min_isotropic_certificate < -tol {
        return Ok(report);
    }
    let q = qform(r);
    let [e1, e2, e3, e4] = frame.vectors();
    let value = five_term(|a, b, c, d| q.eval(a, b, c, d), &e1, &e2, &e3, &e4);
    report.q_combination = Some(value);
    report.status = if value >= -tol {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct QkBoundReport {
    pub hyperkahler_residual: f64,
    /// Coefficients `(a, b, c)` of the selected structure `aI + bJ + cK`.
    pub structure: [f64; 3],
    pub x: Vec<f64>,
    /// `R₁(X, JX, X, JX)` at the selected maximizer.
    pub holomorphic: f64,
    /// `Q(R₁)(X, JX, X, JX)`.
    pub q_value: f64,
    /// `(2m + 4) R₁(X, JX, X, JX)²`.
    pub upper_bound: f64,
    /// `-2 h² + 2 Σ_{p,q} R₁(X, JX, e_p, e_q)²`.
    pub kahler_bound: f64,
    /// `h² - 4 max R₁(X, JX, w, Jw)²` over unit `w ⊥ {X, JX, IX, JIX}`; nonnegative at a maximizer.
    pub y2_slack: f64,
    pub first_order: FirstOrderReport,
    pub tol: f64,
    pub status: CheckStatus,
}

/// Symmetric 3×3 matrix `H` with `R(X, J_u X, X, J_u X) = uᵀ H u` for `J_u = Σ u_a A_a`.
fn structure_quadratic(
    r: &CurvatureTensor,
    t: &QuaternionTriple,
    x: &DVector<f64>,
) -> Matrix3<f64> {
    let ax: Vec<DVector<f64>> = t.structures().iter().map(|s| s.apply(x)).collect();
    let mut h = Matrix3::zeros();
    for a in 0..3 {
        for b in a..3 {
            let v = r.eval(x, &ax[a], x, &ax[b]);
            h[(a, b)] = v;
            h[(b, a)] = v;
        }
    }
    h
}

/// The quadratic-in-`R₁` bound at a maximizer of holomorphic sectional curvature:
/// `Q(R₁)(X,JX,X,JX) ≤ (2m+4) R₁(X,JX,X,JX)²` for hyper-Kähler `R₁`.
///
/// `(J, X)` maximizes `R₁(X, JX, X, JX)` over unit `X` and `J = aI + bJ + cK`:
/// a scan over the 26-point design (antipodes give the same value, so 13 are
/// searched) followed by alternating refinement, where the optimal `(a, b, c)`
/// for fixed `X` is the top eigenvector of a 3×3 form.
pub fn qk_q_bound_check(
    r1: &CurvatureTensor,
    t: &QuaternionTriple,
    cfg: &OptimizerConfig,
    tol: f64,
) -> Result<QkBoundReport> {
    cfg.validate()?;
    if r1.dim() != t.dim() {
        return Err(CurvError::DimensionMismatch {
            expected: t.dim(),
            found: r1.dim(),
        });
    }
    let residual = hyperkahler_residual(r1, t);
    if residual > 1e-8 * r1.max_abs().max(1.0) {
        return Err(CurvError::NotHyperKahler { residual });
    }
    let n = r1.dim();
    let m = t.m() as f64;

    let scan_cfg = cfg.clone().with_restarts((cfg.restarts / 8).max(1));
    let design: Vec<Vector3<f64>> = sphere_design_26()
        .into_iter()
        .filter(|p| {
            let lead = p.iter().find(|c| c.abs() > 1e-12).copied().unwrap_or(0.0);
            lead > 0.0
        })
        .collect();
    let mut best: Option<(f64, Vector3<f64>, DVector<f64>)> = None;
    for u in design {
        let j = t.member(u)?;
        let res = max_holomorphic_sectional_from(r1, &j, &scan_cfg, &[])?;
        let x = res.point.vector().cloned().expect("vector search");
        if best.as_ref().is_none_or(|b| res.value > b.0) {
            best = Some((res.value, u, x));
        }
    }
    let (mut value, mut u, mut x) = best.expect("design is nonempty");

    for _ in 0..50 {
        let h = structure_quadratic(r1, t, &x);
        let eig = h.symmetric_eigen();
        let top = eig.eigenvalues.imax();
        let u_new: Vector3<f64> = eig.eigenvectors.column(top).into_owned();
        let j = t.member(u_new)?;
        let res = max_holomorphic_sectional_from(r1, &j, cfg, &[x.clone()])?;
        let improved = res.value - value;
        if res.value >= value {
            value = res.value;
            u = u_new;
            x = res.point.vector().cloned().expect("vector search");
        }
        if improved <= 1e-13 * value.abs().max(1.0) {
            break;
        }
    }

    let j = t.member(u)?;
    let jm = j.matrix();
    let jx = jm * &x;
    let v = holomorphic_pair_form(r1, &x, &jx);
    let holomorphic = x.dot(&(&v * &jx));
    let q = qform(r1);
    let q_value = q.eval(&x, &jx, &x, &jx);
    let upper_bound = (2.0 * m + 4.0) * holomorphic * holomorphic;
    // Σ_{p,q} R(X,JX,e_p,e_q)² = ‖V‖²_F
    let kahler_bound = -2.0 * holomorphic * holomorphic + 2.0 * v.norm_squared();

    let ix = t.i().apply(&x);
    let jix = jm * &ix;
    let quat_complement = complement_basis(n, &[x.clone(), jx.clone(), ix, jix]);
    let vj = &v * jm;
    let sym = (&vj + vj.transpose()) * 0.5;
    let reduced = quat_complement.transpose() * sym * &quat_complement;
    let extreme = reduced
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(0.0_f64, |a, e| a.max(e.abs()));
    let y2_slack = holomorphic * holomorphic - 4.0 * extreme * extreme;

    let first_order = maximizer_first_order_check(r1, &j, &x, tol.max(1e-5))?;
    let status = if q_value <= upper_bound + tol {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(QkBoundReport {
        hyperkahler_residual: residual,
        structure: [u[0], u[1], u[2]],
        x: x.iter().cloned().collect(),
        holomorphic,
        q_value,
        upper_bound,
        kahler_bound,
        y2_slack,
        first_order,
        tol,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::model_sphere;

    #[test]
    fn off_boundary_frames_are_inapplicable() {
        // The sphere has isotropic curvature 4 on every frame.
        let s = model_sphere(4, 1.0).unwrap();
        let f = FourFrame::coordinate(4, [0, 1, 2, 3]).unwrap();
        let rep = boundary_q_check(&s, &f, 4.0, 1e-6).unwrap();
        assert_eq!(rep.status, CheckStatus::Inapplicable);
        assert!(rep.q_combination.is_none());
        assert!((rep.isotropic_value - 4.0).abs() < 1e-12);
    }

    #[test]
    fn flat_tensor_is_on_the_boundary_and_passes() {
        let z = CurvatureTensor::zero(5).unwrap();
        let f = FourFrame::coordinate(5, [4, 2, 0, 1]).unwrap();
        let rep = boundary_q_check(&z, &f, 0.0, 1e-6).unwrap();
        assert_eq!(rep.status, CheckStatus::Pass);
        assert_eq!(rep.q_combination, Some(0.0));
    }
}
