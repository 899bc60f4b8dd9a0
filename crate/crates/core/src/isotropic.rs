//! Isotropic curvature of an orthonormal four-frame,
//!
//! ```text
//! R(e₁,e₃,e₁,e₃) + R(e₁,e₄,e₁,e₄) + R(e₂,e₃,e₂,e₃) + R(e₂,e₄,e₂,e₄) - 2 R(e₁,e₂,e₃,e₄)
//! ```
//!
//! and its Euclidean gradient with respect to the `n × 4` frame matrix.

use std::ops::AddAssign;

use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::frame::FourFrame;
use crate::pairs::{antisym_from_pairs, wedge};
use crate::tensor::CurvatureTensor;

pub fn isotropic_curvature(r: &CurvatureTensor, f: &FourFrame) -> Result<f64> {
    if f.dim() != r.dim() {
        return Err(crate::CurvError::DimensionMismatch {
            expected: r.dim(),
            found: f.dim(),
        });
    }
    let [e1, e2, e3, e4] = f.vectors();
    Ok(five_term(
        |a, b, c, d| r.eval(a, b, c, d),
        &e1,
        &e2,
        &e3,
        &e4,
    ))
}

/// The five-term combination for an arbitrary quadrilinear form.
pub(crate) fn five_term(
    eval: impl Fn(&DVector<f64>, &DVector<f64>, &DVector<f64>, &DVector<f64>) -> f64,
    e1: &DVector<f64>,
    e2: &DVector<f64>,
    e3: &DVector<f64>,
    e4: &DVector<f64>,
) -> f64 {
    eval(e1, e3, e1, e3) + eval(e1, e4, e1, e4) + eval(e2, e3, e2, e3) + eval(e2, e4, e2, e4)
        - 2.0 * eval(e1, e2, e3, e4)
}

/// Value and Euclidean gradient of the five-term polynomial at any `n × 4` matrix
/// (orthonormality is not required).
pub fn isotropic_value_grad(r: &CurvatureTensor, f: &DMatrix<f64>) -> (f64, DMatrix<f64>) {
    let n = r.dim();
    let m = r.pair_matrix();
    let cols: Vec<DVector<f64>> = (0..4).map(|c| f.column(c).into_owned()).collect();
    let mut grad = DMatrix::zeros(n, 4);
    let mut value = 0.0;

    for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
        let ab = wedge(&cols[a], &cols[b]);
        let mab = m * &ab;
        value += ab.dot(&mab);
        let u = antisym_from_pairs(n, &mab);
        let ga = &u * &cols[b] * 2.0;
        let gb = &u * &cols[a] * -2.0;
        grad.column_mut(a).add_assign(&ga);
        grad.column_mut(b).add_assign(&gb);
    }

    let w12 = wedge(&cols[0], &cols[1]);
    let w34 = wedge(&cols[2], &cols[3]);
    let m34 = m * &w34;
    let m12 = m * &w12;
    value -= 2.0 * w12.dot(&m34);
    let u = antisym_from_pairs(n, &m34);
    let v = antisym_from_pairs(n, &m12);
    grad.column_mut(0).add_assign(&(&u * &cols[1] * -2.0));
    grad.column_mut(1).add_assign(&(&u * &cols[0] * 2.0));
    grad.column_mut(2).add_assign(&(&v * &cols[3] * -2.0));
    grad.column_mut(3).add_assign(&(&v * &cols[2] * 2.0));

    (value, grad)
}
