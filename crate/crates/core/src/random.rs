//! Seeded sampling helpers. Every consumer derives its stream from an explicit seed.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn gaussian_vector(rng: &mut Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| gaussian(rng))
}

pub fn gaussian_matrix(rng: &mut Rng, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Uniformly distributed unit vector.
pub fn unit_vector(rng: &mut Rng, n: usize) -> DVector<f64> {
    loop {
        let v = gaussian_vector(rng, n);
        let norm = v.norm();
        if norm > 1e-8 {
            return v / norm;
        }
    }
}

/// Haar-distributed `n × k` matrix with orthonormal columns.
pub fn stiefel_point(rng: &mut Rng, n: usize, k: usize) -> DMatrix<f64> {
    crate::search::stiefel::qf(&gaussian_matrix(rng, n, k))
}

/// Raw `n⁴` table of standard normals.
pub fn random_table(rng: &mut Rng, n: usize) -> Vec<f64> {
    (0..n * n * n * n).map(|_| gaussian(rng)).collect()
}

/// Random algebraic curvature tensor (projection of a Gaussian table).
pub fn random_curvature(rng: &mut Rng, n: usize) -> crate::CurvatureTensor {
    crate::tensor::project_to_curvature(n, &random_table(rng, n)).expect("n >= 4 and finite")
}
