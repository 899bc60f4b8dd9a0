//! Kähler-side quantities: orthogonal bisectional curvature and the algebraic
//! identities relating it to sectional and holomorphic sectional curvatures.

use nalgebra::DVector;

use crate::complex::ComplexStructure;
use crate::error::{CurvError, Result};
use crate::tensor::CurvatureTensor;
use crate::tolerance;

fn check_pair(
    r: &CurvatureTensor,
    j: &ComplexStructure,
    x: &DVector<f64>,
    y: &DVector<f64>,
) -> Result<()> {
    let n = r.dim();
    for len in [j.dim(), x.len(), y.len()] {
        if len != n {
            return Err(CurvError::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let unit = (x.norm() - 1.0).abs().max((y.norm() - 1.0).abs());
    if unit > tolerance::FRAME {
        return Err(CurvError::ConstraintViolation {
            reason: "vectors must be unit",
            defect: unit,
        });
    }
    let orth = x.dot(y).abs().max(j.apply(x).dot(y).abs());
    if orth > tolerance::FRAME {
        return Err(CurvError::ConstraintViolation {
            reason: "g(X,Y) = g(JX,Y) = 0 required",
            defect: orth,
        });
    }
    Ok(())
}

/// `R(X, JX, Y, JY)` for unit `X, Y` with `g(X,Y) = g(JX,Y) = 0`.
pub fn orthogonal_bisectional(
    r: &CurvatureTensor,
    j: &ComplexStructure,
    x: &DVector<f64>,
    y: &DVector<f64>,
) -> Result<f64> {
    check_pair(r, j, x, y)?;
    let (jx, jy) = (j.apply(x), j.apply(y));
    Ok(r.eval(x, &jx, y, &jy))
}

/// `R(X,Y,X,Y) + R(X,JY,X,JY) + R(JX,Y,JX,Y) + R(JX,JY,JX,JY)`; equals twice the
/// orthogonal bisectional curvature when `R` is `J`-invariant.
pub fn four_sectional_sum(
    r: &CurvatureTensor,
    j: &ComplexStructure,
    x: &DVector<f64>,
    y: &DVector<f64>,
) -> f64 {
    let (jx, jy) = (j.apply(x), j.apply(y));
    r.sectional(x, y) + r.sectional(x, &jy) + r.sectional(&jx, y) + r.sectional(&jx, &jy)
}

/// `R(X, JX, X, JX)`.
pub fn holomorphic_sectional(r: &CurvatureTensor, j: &ComplexStructure, x: &DVector<f64>) -> f64 {
    r.sectional(x, &j.apply(x))
}

/// Both sides of the two polarization expansions of `R(Z', JZ', W', JW')`.
#[derive(Clone, Copy, Debug)]
pub struct PolarizationTerms {
    /// `R(Z+W, JZ+JW, Z-W, JZ-JW)`
    pub plus_minus: f64,
    /// `R(Z,JZ,Z,JZ) + R(W,JW,W,JW) + 2R(Z,JZ,W,JW) - 4R(Z,JW,Z,JW)`
    pub plus_minus_expanded: f64,
    /// `R(Z+JW, JZ-W, Z-JW, JZ+W)`
    pub rotated: f64,
    /// `R(Z,JZ,Z,JZ) + R(W,JW,W,JW) + 2R(Z,JZ,W,JW) - 4R(Z,W,Z,W)`
    pub rotated_expanded: f64,
    /// `R(Z,JZ,Z,JZ) + R(W,JW,W,JW)`
    pub holomorphic_sum: f64,
    /// `R(Z,JZ,W,JW)`
    pub bisectional: f64,
}

pub fn polarization_terms(
    r: &CurvatureTensor,
    j: &ComplexStructure,
    z: &DVector<f64>,
    w: &DVector<f64>,
) -> Result<PolarizationTerms> {
    check_pair(r, j, z, w)?;
    let (jz, jw) = (j.apply(z), j.apply(w));
    let hz = r.sectional(z, &jz);
    let hw = r.sectional(w, &jw);
    let b = r.eval(z, &jz, w, &jw);
    let plus_minus = r.eval(&(z + w), &(&jz + &jw), &(z - w), &(&jz - &jw));
    let rotated = r.eval(&(z + &jw), &(&jz - w), &(z - &jw), &(&jz + w));
    Ok(PolarizationTerms {
        plus_minus,
        plus_minus_expanded: hz + hw + 2.0 * b - 4.0 * r.sectional(z, &jw),
        rotated,
        rotated_expanded: hz + hw + 2.0 * b - 4.0 * r.sectional(z, w),
        holomorphic_sum: hz + hw,
        bisectional: b,
    })
}
