#![allow(dead_code)]

use curvkit::random::{unit_vector, Rng};
use curvkit::{ComplexStructure, CurvatureTensor};
use nalgebra::{DMatrix, DVector};

/// Unit `y` orthogonal to `x` and `Jx` (and to any `extra` vectors).
pub fn admissible_partner(
    g: &mut Rng,
    j: &ComplexStructure,
    x: &DVector<f64>,
    extra: &[DVector<f64>],
) -> DVector<f64> {
    let mut basis = vec![x.clone(), j.apply(x)];
    basis.extend(extra.iter().cloned());
    let mut y = unit_vector(g, x.len());
    // Two Gram-Schmidt sweeps for numerical safety.
    for _ in 0..2 {
        for b in &basis {
            let bb = b.normalize();
            y -= &bb * bb.dot(&y);
        }
    }
    y.normalize()
}

pub fn eval(
    r: &CurvatureTensor,
    x: &DVector<f64>,
    y: &DVector<f64>,
    z: &DVector<f64>,
    w: &DVector<f64>,
) -> f64 {
    r.evaluate(x, y, z, w).unwrap()
}

pub fn basis_vector(n: usize, i: usize) -> DVector<f64> {
    let mut e = DVector::zeros(n);
    e[i] = 1.0;
    e
}

/// `‖a - b‖ / ‖b‖`.
pub fn rel_diff(a: &CurvatureTensor, b: &CurvatureTensor) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Numerical rank via singular values relative to the largest one.
pub fn rank(m: &DMatrix<f64>, cutoff: f64) -> usize {
    let sv = m.clone().singular_values();
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    sv.iter().filter(|&&s| s > cutoff * smax).count()
}
