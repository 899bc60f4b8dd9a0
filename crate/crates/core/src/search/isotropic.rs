use nalgebra::DMatrix;

use super::stiefel::Objective;
use super::{argmin, multistart, FrameSearchResult, OptimizerConfig, SearchPoint};
use crate::error::Result;
use crate::frame::FourFrame;
use crate::isotropic::isotropic_value_grad;
use crate::models::model_sphere;
use crate::tensor::CurvatureTensor;

struct IsotropicObjective<'a>(&'a CurvatureTensor);

impl Objective for IsotropicObjective<'_> {
    fn value_grad(&self, x: &DMatrix<f64>) -> (f64, DMatrix<f64>) {
        isotropic_value_grad(self.0, x)
    }
}

/// Fixed probe frames every search also starts from.
fn probe_frames(n: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::new();
    for idx in [[0, 1, 2, 3], [0, 2, 1, 3], [n - 4, n - 3, n - 2, n - 1]] {
        if let Ok(f) = FourFrame::coordinate(n, idx) {
            out.push(f.matrix().clone());
        }
    }
    out
}

/// Minimum of isotropic curvature over orthonormal four-frames.
pub fn min_isotropic(r: &CurvatureTensor, cfg: &OptimizerConfig) -> Result<FrameSearchResult> {
    min_isotropic_from(r, cfg, &[])
}

/// As [`min_isotropic`], with extra warm starts tried before the random restarts.
pub fn min_isotropic_from(
    r: &CurvatureTensor,
    cfg: &OptimizerConfig,
    warm: &[FourFrame],
) -> Result<FrameSearchResult> {
    cfg.validate()?;
    let n = r.dim();
    let mut starts: Vec<DMatrix<f64>> = warm.iter().map(|f| f.matrix().clone()).collect();
    starts.extend(probe_frames(n));
    let runs = multistart(&IsotropicObjective(r), n, 4, &starts, cfg);
    let values: Vec<f64> = runs.iter().map(|run| run.value).collect();
    let best = &runs[argmin(&values)];
    let frame = FourFrame::from_matrix(best.point.clone())?;
    Ok(FrameSearchResult {
        value: best.value,
        point: SearchPoint::Frame(frame),
        converged: best.converged,
        iterations: best.iterations,
        restart_values: values,
    })
}

/// Largest `κ` for which `R - κ·(g ∧ g)` keeps nonnegative isotropic curvature.
///
/// The constant-curvature model contributes exactly 4 to every frame, so this is
/// a quarter of the minimum isotropic curvature.
pub fn pinching_constant(r: &CurvatureTensor, cfg: &OptimizerConfig) -> Result<f64> {
    Ok(min_isotropic(r, cfg)?.value / 4.0)
}

/// The shifted tensor `R - κ·(g ∧ g)` for a given `κ`.
pub fn pinched(r: &CurvatureTensor, kappa: f64) -> Result<CurvatureTensor> {
    Ok(r - &model_sphere(r.dim(), kappa)?)
}

/// Smallest `c ≥ 0` (to relative precision `1e-6`) such that `R + c·(g ∧ g)` has
/// nonnegative minimum isotropic curvature, found by bisection against
/// [`min_isotropic`]. Returns `c` and the shifted tensor.
pub fn shift_into_cone(
    r: &CurvatureTensor,
    cfg: &OptimizerConfig,
) -> Result<(f64, CurvatureTensor)> {
    let n = r.dim();
    let feasible = |c: f64| -> Result<bool> {
        let shifted = r + &model_sphere(n, c)?;
        Ok(min_isotropic(&shifted, cfg)?.value >= 0.0)
    };
    if feasible(0.0)? {
        return Ok((0.0, r.clone()));
    }
    let mut hi = r.max_abs().max(1e-12);
    while !feasible(hi)? {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    while hi - lo > 1e-6 * hi {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((hi, r + &model_sphere(n, hi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::model_sphere;

    fn quick() -> OptimizerConfig {
        OptimizerConfig {
            restarts: 8,
            ..OptimizerConfig::default()
        }
    }

    #[test]
    fn sphere_minimum_is_four() {
        let s = model_sphere(5, 1.0).unwrap();
        let res = min_isotropic(&s, &quick()).unwrap();
        assert!((res.value - 4.0).abs() < 1e-12);
        assert!((pinching_constant(&s, &quick()).unwrap() - 1.0).abs() < 1e-12);
        let s2 = model_sphere(5, 2.0).unwrap();
        assert!((pinching_constant(&s2, &quick()).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_config_rejected() {
        let s = model_sphere(4, 1.0).unwrap();
        let cfg = OptimizerConfig {
            restarts: 0,
            ..OptimizerConfig::default()
        };
        assert!(min_isotropic(&s, &cfg).is_err());
    }

    #[test]
    fn local_runs_descend_and_stay_on_the_stiefel_manifold() {
        use super::super::stiefel::descend;
        use crate::frame::gram_defect;
        use crate::random::{random_curvature, rng, stiefel_point};

        let mut g = rng(12);
        for n in [4, 6, 8] {
            let r = random_curvature(&mut g, n);
            let x0 = stiefel_point(&mut g, n, 4);
            let run = descend(&IsotropicObjective(&r), &x0, &OptimizerConfig::default());
            assert!(run.history.windows(2).all(|w| w[1] <= w[0]));
            assert!(gram_defect(&run.point) < 1e-9);
            assert!((isotropic_value_grad(&r, &run.point).0 - run.value).abs() < 1e-10);
        }
    }
}
