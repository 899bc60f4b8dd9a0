//! Model curvature tensors: constant curvature, constant holomorphic curvature,
//! the quaternionic projective model and the per-structure building blocks.

use nalgebra::DMatrix;

use crate::complex::{ComplexStructure, QuaternionTriple};
use crate::error::{CurvError, Result};
use crate::pairs::pair_list;
use crate::tensor::{check_dim, CurvatureTensor};

/// `λ (g_ik g_jl - g_il g_jk)`: sectional curvature `λ` on every plane.
pub fn model_sphere(n: usize, lambda: f64) -> Result<CurvatureTensor> {
    check_dim(n)?;
    let np = n * (n - 1) / 2;
    Ok(CurvatureTensor::from_raw(
        n,
        DMatrix::identity(np, np) * lambda,
    ))
}

/// `S_J(X,Y,Z,W) = 2 g(JX,Y) g(JZ,W) + g(JX,Z) g(JY,W) - g(JX,W) g(JY,Z)`.
pub fn model_sj(j: &ComplexStructure) -> Result<CurvatureTensor> {
    let n = j.dim();
    check_dim(n)?;
    // g(J e_a, e_b) = J_{ba}
    let jm = j.matrix();
    let g = |a: usize, b: usize| jm[(b, a)];
    let pairs = pair_list(n);
    let np = pairs.len();
    let mut m = DMatrix::zeros(np, np);
    for (ia, &(x, y)) in pairs.iter().enumerate() {
        for (ib, &(z, w)) in pairs.iter().enumerate() {
            m[(ia, ib)] = 2.0 * g(x, y) * g(z, w) + g(x, z) * g(y, w) - g(x, w) * g(y, z);
        }
    }
    Ok(CurvatureTensor::from_raw(n, m))
}

/// Kähler tensor of constant holomorphic sectional curvature `c` on ℂ^m = ℝ^{2m},
/// `(c/4)(g ∧ g + S_J)`, together with the structure it is built for.
pub fn model_fubini_study(m: usize, c: f64) -> Result<(CurvatureTensor, ComplexStructure)> {
    if m < 2 {
        return Err(CurvError::DimensionTooSmall { n: 2 * m });
    }
    let j = ComplexStructure::standard(2 * m)?;
    let r = fubini_study_for(&j, c)?;
    Ok((r, j))
}

/// Constant holomorphic sectional curvature `c` with respect to an arbitrary `J`.
pub fn fubini_study_for(j: &ComplexStructure, c: f64) -> Result<CurvatureTensor> {
    let sphere = model_sphere(j.dim(), 1.0)?;
    let sj = model_sj(j)?;
    Ok((&sphere + &sj).scaled(c / 4.0))
}

/// Curvature tensor of quaternionic projective space normalized so that
/// `4 R₀ = g ∧ g + S_I + S_J + S_K`.
pub fn model_r0(t: &QuaternionTriple) -> Result<CurvatureTensor> {
    let n = t.dim();
    let mut acc = model_sphere(n, 1.0)?;
    for s in t.structures() {
        acc = &acc + &model_sj(s)?;
    }
    Ok(acc.scaled(0.25))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn e(n: usize, i: usize) -> DVector<f64> {
        DVector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 })
    }

    #[test]
    fn sphere_components() {
        let s = model_sphere(4, 1.0).unwrap();
        assert_eq!(s.component(0, 1, 0, 1), 1.0);
        assert_eq!(s.component(0, 1, 1, 0), -1.0);
        assert_eq!(s.component(0, 1, 2, 3), 0.0);
        assert_eq!(model_sphere(6, 0.0).unwrap().max_abs(), 0.0);
        assert!(model_sphere(3, 1.0).is_err());
    }

    #[test]
    fn sj_known_values() {
        let j = ComplexStructure::standard(6).unwrap();
        let s = model_sj(&j).unwrap();
        let x = e(6, 0);
        let jx = j.apply(&x);
        assert!((s.evaluate(&x, &jx, &x, &jx).unwrap() - 3.0).abs() < 1e-15);
        let y = e(6, 2);
        assert!(s.evaluate(&x, &y, &x, &y).unwrap().abs() < 1e-15);
        assert!(s.bianchi_defect() < 1e-15);
    }

    #[test]
    fn r0_is_valid_curvature() {
        let t = QuaternionTriple::standard(8).unwrap();
        let r0 = model_r0(&t).unwrap();
        CurvatureTensor::from_pair_matrix(8, r0.pair_matrix().clone()).unwrap();
    }
}
