//! The `verify` suite: every identity and diagnostic of the toolkit, run as
//! independent checks and reported in a fixed order.
//!
//! Each check reduces to a nonnegative defect `measured`; a check passes iff
//! `measured <= tolerance`. Sampled checks become inapplicable at `--samples 0`,
//! basis-exhaustive ones still run.

use std::time::Instant;

use curvkit::fixtures::fixture;
use curvkit::random::{random_curvature, rng, unit_vector, Rng};
use curvkit::spaces::kahler_residual;
use curvkit::*;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{to_json, write_output};
use crate::{CliError, Outcome, VerifyArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub paper_anchor: &'static str,
    pub status: Status,
    pub measured: Option<f64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: &'static str,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub injected_fault: Option<String>,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub inapplicable: usize,
    /// Excluded from determinism comparisons.
    pub wall_time_seconds: f64,
}

/// Shared, read-only inputs built once before the checks run.
struct Ctx {
    n: usize,
    seed: u64,
    samples: usize,
    complex: Option<ComplexStructure>,
    triple: Option<QuaternionTriple>,
    kahler: Option<CurvatureSubspace>,
    hyperkahler: Option<CurvatureSubspace>,
}

enum Eval {
    Measured(f64),
    Inapplicable(&'static str),
}

type Run = fn(&Ctx, bool) -> curvkit::Result<Eval>;

struct CheckDef {
    id: &'static str,
    anchor: &'static str,
    tolerance: f64,
    faultable: bool,
    run: Run,
}

/// Adds a generic curvature tensor of relative size 1e-2: breaks every structured identity.
fn corrupt(r: &CurvatureTensor, seed: u64) -> CurvatureTensor {
    let noise = random_curvature(&mut rng(seed ^ 0xfa17), r.dim());
    let scale = 1e-2 * r.norm().max(1.0) / noise.norm();
    r + &noise.scaled(scale)
}

fn maybe(r: CurvatureTensor, fault: bool, seed: u64) -> CurvatureTensor {
    if fault {
        corrupt(&r, seed)
    } else {
        r
    }
}

fn rel(a: &CurvatureTensor, b: &CurvatureTensor) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn partner(g: &mut Rng, j: &ComplexStructure, x: &DVector<f64>) -> DVector<f64> {
    let jx = j.apply(x);
    let mut y = unit_vector(g, x.len());
    for _ in 0..2 {
        y -= x * x.dot(&y);
        y -= &jx * jx.dot(&y);
    }
    y.normalize()
}

fn optimizer(ctx: &Ctx) -> OptimizerConfig {
    OptimizerConfig::default().with_seed(ctx.seed)
}

fn need_samples(ctx: &Ctx) -> Option<Eval> {
    (ctx.samples == 0).then_some(Eval::Inapplicable("no samples requested"))
}

fn check_generic_dimension(ctx: &Ctx, _: bool) -> curvkit::Result<Eval> {
    let n = ctx.n;
    let d = curvature_space_basis(n)?.dimension();
    let expected = n * n * (n * n - 1) / 12;
    let mut defect = d.abs_diff(expected) as f64;
    if let Ok(f) = fixture("generic", n) {
        defect += f.dimension.abs_diff(d) as f64;
    }
    Ok(Eval::Measured(defect))
}

fn check_structure_dimensions(ctx: &Ctx, _: bool) -> curvkit::Result<Eval> {
    let mut defect = 0.0;
    let mut compared = 0;
    for (label, space) in [("kahler", &ctx.kahler), ("hyperkahler", &ctx.hyperkahler)] {
        if let (Some(s), Ok(f)) = (space, fixture(label, ctx.n)) {
            defect += f.dimension.abs_diff(s.dimension()) as f64;
            compared += 1;
        }
    }
    if compared == 0 {
        return Ok(Eval::Inapplicable("no frozen fixture for this dimension"));
    }
    Ok(Eval::Measured(defect))
}

fn check_sphere_q(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let s = maybe(model_sphere(ctx.n, 1.0)?, fault, ctx.seed);
    let c = 2.0 * (ctx.n as f64 - 1.0);
    Ok(Eval::Measured(rel(&qform(&s), &model_sphere(ctx.n, c)?)))
}

fn check_pinching_sphere(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let s = maybe(model_sphere(ctx.n, 1.0)?, fault, ctx.seed);
    let k = pinching_constant(&s, &optimizer(ctx).with_restarts(8))?;
    Ok(Eval::Measured((k - 1.0).abs()))
}

fn check_shifted_einstein(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    if let Some(e) = need_samples(ctx) {
        return Ok(e);
    }
    let n = ctx.n;
    let s = model_sphere(n, 1.0)?;
    let mut g = rng(ctx.seed.wrapping_add(21));
    let mut worst = 0.0_f64;
    for i in 0..ctx.samples {
        let r = &random_curvature(&mut g, n).weyl() + &s;
        let r = maybe(r, fault, ctx.seed + i as u64);
        let kappa = -2.0 + 5.0 * (i as f64 + 0.5) / ctx.samples as f64;
        let lhs = qform(&(&r - &s.scaled(kappa)));
        let rhs = &qform(&r) + &s.scaled(2.0 * (n as f64 - 1.0) * kappa * (kappa - 2.0));
        worst = worst.max((&lhs - &rhs).norm() / (1.0 + rhs.norm()));
    }
    Ok(Eval::Measured(worst))
}

fn kahler_ctx(ctx: &Ctx) -> Option<(&ComplexStructure, &CurvatureSubspace)> {
    ctx.complex.as_ref().zip(ctx.kahler.as_ref())
}

fn check_kahler_four_sectional(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some((j, space)) = kahler_ctx(ctx) else {
        return Ok(Eval::Inapplicable("odd dimension"));
    };
    if let Some(e) = need_samples(ctx) {
        return Ok(e);
    }
    let mut g = rng(ctx.seed.wrapping_add(4));
    let mut worst = 0.0_f64;
    for i in 0..ctx.samples {
        let seed = ctx.seed.wrapping_add(i as u64);
        let r = maybe(space.sample(seed, 1.0)?, fault, seed);
        let x = unit_vector(&mut g, ctx.n);
        let y = partner(&mut g, j, &x);
        let lhs = four_sectional_sum(&r, j, &x, &y);
        worst = worst.max((lhs - 2.0 * orthogonal_bisectional(&r, j, &x, &y)?).abs());
    }
    Ok(Eval::Measured(worst))
}

fn check_kahler_polarization(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some((j, space)) = kahler_ctx(ctx) else {
        return Ok(Eval::Inapplicable("odd dimension"));
    };
    if let Some(e) = need_samples(ctx) {
        return Ok(e);
    }
    let mut g = rng(ctx.seed.wrapping_add(5));
    let mut worst = 0.0_f64;
    for i in 0..ctx.samples {
        let seed = ctx.seed.wrapping_add(100 + i as u64);
        let r = maybe(space.sample(seed, 1.0)?, fault, seed);
        let z = unit_vector(&mut g, ctx.n);
        let w = partner(&mut g, j, &z);
        let p = polarization_terms(&r, j, &z, &w)?;
        worst = worst
            .max((p.plus_minus - p.plus_minus_expanded).abs())
            .max((p.rotated - p.rotated_expanded).abs());
    }
    Ok(Eval::Measured(worst))
}

fn fubini_study(ctx: &Ctx, fault: bool) -> curvkit::Result<Option<CurvatureTensor>> {
    if !ctx.n.is_multiple_of(2) {
        return Ok(None);
    }
    Ok(Some(maybe(
        model_fubini_study(ctx.n / 2, 4.0)?.0,
        fault,
        ctx.seed,
    )))
}

fn check_fs_einstein(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some(fs) = fubini_study(ctx, fault)? else {
        return Ok(Eval::Inapplicable("odd dimension"));
    };
    let rho = 2.0 * (ctx.n as f64 / 2.0 + 1.0);
    Ok(Eval::Measured(einstein_residual(&fs, rho) / fs.norm()))
}

/// `max(|min|, -lowest restart)` for a tensor whose minimum should be exactly zero.
fn zero_minimum_defect(
    r: &CurvatureTensor,
    ctx: &Ctx,
) -> curvkit::Result<(f64, FrameSearchResult)> {
    let res = min_isotropic(r, &optimizer(ctx))?;
    let lowest = res
        .restart_values
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    Ok((res.value.abs().max(-lowest), res))
}

fn boundary_defect(r: &CurvatureTensor, ctx: &Ctx) -> curvkit::Result<Eval> {
    let res = min_isotropic(r, &optimizer(ctx))?;
    let frame = res.point.frame().expect("frame search");
    let rep = boundary_q_check(r, frame, res.value, 1e-6)?;
    Ok(match rep.q_combination {
        Some(q) if rep.status != CheckStatus::Inapplicable => Eval::Measured((-q).max(0.0)),
        _ => Eval::Inapplicable("minimizing frame is not on the boundary"),
    })
}

fn check_fs_isotropic(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some(fs) = fubini_study(ctx, fault)? else {
        return Ok(Eval::Inapplicable("odd dimension"));
    };
    Ok(Eval::Measured(zero_minimum_defect(&fs, ctx)?.0))
}

fn check_fs_boundary(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some(fs) = fubini_study(ctx, false)? else {
        return Ok(Eval::Inapplicable("odd dimension"));
    };
    if fault {
        // Evaluate the combination on a corrupted Q at the true boundary frame.
        return corrupted_boundary(&fs, ctx);
    }
    boundary_defect(&fs, ctx)
}

/// Negative control: the boundary frame of `r`, with the Q-combination evaluated
/// on `Q(r) - c·g⊙g` where `c` is large enough to make it negative.
fn corrupted_boundary(r: &CurvatureTensor, ctx: &Ctx) -> curvkit::Result<Eval> {
    let res = min_isotropic(r, &optimizer(ctx))?;
    let frame = res.point.frame().expect("frame search");
    let rep = boundary_q_check(r, frame, res.value, 1e-6)?;
    let q = rep.q_combination.unwrap_or(0.0) - 4.0 * (1.0 + qform(r).max_abs());
    Ok(Eval::Measured((-q).max(0.0)))
}

fn r0(ctx: &Ctx, fault: bool) -> curvkit::Result<Option<CurvatureTensor>> {
    match &ctx.triple {
        Some(t) => Ok(Some(maybe(model_r0(t)?, fault, ctx.seed))),
        None => Ok(None),
    }
}

const NOT_QUATERNIONIC: &str = "dimension is not a multiple of 4 that is at least 8";

fn check_r0_einstein(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some(r) = r0(ctx, fault)? else {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    };
    let m = (ctx.n / 4) as f64;
    let q = rel(&qform(&r), &r.scaled(2.0 * m + 4.0));
    let ric = (r.ricci() - DMatrix::identity(ctx.n, ctx.n) * (m + 2.0))
        .abs()
        .max();
    Ok(Eval::Measured(q.max(ric)))
}

fn check_r0_frames(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let (Some(r), Some(t)) = (r0(ctx, fault)?, ctx.triple.as_ref()) else {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    };
    let mut g = rng(ctx.seed.wrapping_add(9));
    let mut worst = 0.0_f64;
    for _ in 0..8 {
        let x = unit_vector(&mut g, ctx.n);
        let (ix, jx, kx) = (t.i().apply(&x), t.j().apply(&x), t.k().apply(&x));
        worst = worst.max(orthogonal_bisectional(&r, t.j(), &x, &ix)?.abs());
        let f = FourFrame::new(x, jx, ix, kx)?;
        worst = worst.max((isotropic_curvature(&r, &f)? - 4.0).abs());
    }
    Ok(Eval::Measured(worst))
}

fn check_r0_isotropic(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some(r) = r0(ctx, fault)? else {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    };
    Ok(Eval::Measured(zero_minimum_defect(&r, ctx)?.0))
}

fn check_r0_boundary(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some(r) = r0(ctx, false)? else {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    };
    if fault {
        return corrupted_boundary(&r, ctx);
    }
    boundary_defect(&r, ctx)
}

fn hk_ctx(ctx: &Ctx) -> Option<(&QuaternionTriple, &CurvatureSubspace)> {
    ctx.triple.as_ref().zip(ctx.hyperkahler.as_ref())
}

fn hk_samples(
    ctx: &Ctx,
    space: &CurvatureSubspace,
    fault: bool,
    offset: u64,
) -> curvkit::Result<Vec<CurvatureTensor>> {
    (0..ctx.samples)
        .map(|i| {
            let seed = ctx.seed.wrapping_add(offset + i as u64);
            Ok(maybe(space.sample(seed, 1.0)?, fault, seed))
        })
        .collect()
}

fn check_hk_ricci(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some((_, space)) = hk_ctx(ctx) else {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    };
    if let Some(e) = need_samples(ctx) {
        return Ok(e);
    }
    let worst = hk_samples(ctx, space, fault, 300)?
        .iter()
        .map(|r| r.ricci().abs().max())
        .fold(0.0, f64::max);
    Ok(Eval::Measured(worst))
}

fn basis_pairing(ctx: &Ctx, fault: bool, partners: &[CurvatureTensor]) -> curvkit::Result<Eval> {
    let (_, space) = hk_ctx(ctx).expect("checked by caller");
    let mut worst = 0.0_f64;
    for (k, b) in space.basis().iter().enumerate() {
        let b = maybe(b.clone(), fault, ctx.seed.wrapping_add(k as u64));
        for s in partners {
            worst = worst.max(bform(&b, s)?.norm() / (b.norm() * s.norm()));
        }
    }
    Ok(Eval::Measured(worst))
}

fn check_hk_sphere(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    if hk_ctx(ctx).is_none() {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    }
    basis_pairing(ctx, fault, &[model_sphere(ctx.n, 1.0)?])
}

fn check_hk_sj(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some((t, _)) = hk_ctx(ctx) else {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    };
    let partners = t
        .structures()
        .iter()
        .map(model_sj)
        .collect::<curvkit::Result<Vec<_>>>()?;
    basis_pairing(ctx, fault, &partners)
}

fn check_hk_r0(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some((t, _)) = hk_ctx(ctx) else {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    };
    basis_pairing(ctx, fault, &[model_r0(t)?])
}

fn check_hk_cross_terms(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some((t, space)) = hk_ctx(ctx) else {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    };
    if let Some(e) = need_samples(ctx) {
        return Ok(e);
    }
    let r0 = model_r0(t)?;
    let q0 = qform(&r0);
    let mut worst = 0.0_f64;
    for (i, r1) in hk_samples(ctx, space, fault, 400)?.iter().enumerate() {
        let kappa = -2.0 + 5.0 * (i as f64 + 0.5) / ctx.samples as f64;
        let lhs = qform(&(r1 + &r0.scaled(kappa)));
        let q1 = qform(r1);
        let rhs = &q1 + &q0.scaled(kappa * kappa);
        worst = worst.max((&lhs - &rhs).norm() / (q1.norm() + kappa * kappa * q0.norm()));
    }
    Ok(Eval::Measured(worst))
}

fn check_hk_kahler_bound(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some((t, space)) = hk_ctx(ctx) else {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    };
    if let Some(e) = need_samples(ctx) {
        return Ok(e);
    }
    let n = ctx.n;
    let mut g = rng(ctx.seed.wrapping_add(44));
    let mut worst = 0.0_f64;
    for r1 in hk_samples(ctx, space, false, 500)? {
        let q = qform(&r1);
        // The corrupted variant inflates Q only, leaving R₁ itself intact.
        let q = if fault {
            &q + &model_sphere(n, 1.0 + q.max_abs())?
        } else {
            q
        };
        for a in t.structures() {
            let x = unit_vector(&mut g, n);
            let jx = a.apply(&x);
            let h = r1.evaluate(&x, &jx, &x, &jx)?;
            let mut sum = 0.0;
            for p in 0..n {
                for s in 0..n {
                    let mut ep = DVector::zeros(n);
                    ep[p] = 1.0;
                    let mut es = DVector::zeros(n);
                    es[s] = 1.0;
                    sum += r1.evaluate(&x, &jx, &ep, &es)?.powi(2);
                }
            }
            let lhs = q.evaluate(&x, &jx, &x, &jx)?;
            worst = worst.max(lhs - (-2.0 * h * h + 2.0 * sum));
        }
    }
    Ok(Eval::Measured(worst.max(0.0)))
}

fn qk_reports(ctx: &Ctx, fault: bool) -> curvkit::Result<Option<Vec<QkBoundReport>>> {
    let Some((t, space)) = hk_ctx(ctx) else {
        return Ok(None);
    };
    let cfg = optimizer(ctx).with_restarts(32);
    let samples = hk_samples(ctx, space, false, 600)?;
    samples
        .iter()
        .map(|r1| {
            let mut rep = qk_q_bound_check(r1, t, &cfg, 1e-6)?;
            if fault {
                // Re-evaluate the first-order conditions away from the maximizer.
                let x = unit_vector(&mut rng(ctx.seed), ctx.n);
                let j = t.member(nalgebra::Vector3::from(rep.structure))?;
                rep.first_order = maximizer_first_order_check(r1, &j, &x, 1e-5)?;
                rep.q_value += 1.0 + rep.upper_bound.abs();
            }
            Ok(rep)
        })
        .collect::<curvkit::Result<Vec<_>>>()
        .map(Some)
}

fn check_hk_first_order(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    if let Some(e) = need_samples(ctx) {
        return Ok(e);
    }
    let Some(reports) = qk_reports(ctx, fault)? else {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    };
    let worst = reports
        .iter()
        .map(|r| {
            r.first_order
                .first_order_y
                .max(r.first_order.first_order_jy)
        })
        .fold(0.0, f64::max);
    Ok(Eval::Measured(worst))
}

fn check_hk_upper_bound(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    if let Some(e) = need_samples(ctx) {
        return Ok(e);
    }
    let Some(reports) = qk_reports(ctx, fault)? else {
        return Ok(Eval::Inapplicable(NOT_QUATERNIONIC));
    };
    let worst = reports
        .iter()
        .map(|r| (r.q_value - r.upper_bound).max(0.0))
        .fold(0.0, f64::max);
    Ok(Eval::Measured(worst))
}

fn check_kahler_invariance_of_models(ctx: &Ctx, fault: bool) -> curvkit::Result<Eval> {
    let Some(j) = &ctx.complex else {
        return Ok(Eval::Inapplicable("odd dimension"));
    };
    let fs = maybe(fubini_study_for(j, 4.0)?, fault, ctx.seed);
    Ok(Eval::Measured(kahler_residual(&fs, j)))
}

const PLUMBING: &str = "plumbing";

fn definitions() -> Vec<CheckDef> {
    let mut defs = vec![
        CheckDef {
            id: "generic.dimension",
            anchor: "the algebraic curvature tensors on R^n form a space of dimension n^2(n^2-1)/12",
            tolerance: 0.0,
            faultable: false,
            run: check_generic_dimension,
        },
        CheckDef {
            id: "structure.dimensions",
            anchor: PLUMBING,
            tolerance: 0.0,
            faultable: false,
            run: check_structure_dimensions,
        },
        CheckDef {
            id: "sphere.q_fixed_point",
            anchor: "Q(S) = 2(n-1) S for the constant curvature tensor S",
            tolerance: 1e-9,
            faultable: true,
            run: check_sphere_q,
        },
        CheckDef {
            id: "sphere.pinching",
            anchor: "the largest k with R - k S of nonnegative isotropic curvature is min isotropic curvature / 4",
            tolerance: 1e-9,
            faultable: true,
            run: check_pinching_sphere,
        },
        CheckDef {
            id: "einstein.shifted_q",
            anchor: "if Ric = (n-1) g then Q(R - k S) = Q(R) + 2(n-1) k (k-2) S",
            tolerance: 1e-8,
            faultable: true,
            run: check_shifted_einstein,
        },
        CheckDef {
            id: "kahler.four_sectional",
            anchor: "for Kahler R and g(X,Y) = g(JX,Y) = 0: R(X,Y,X,Y) + R(X,JY,X,JY) + R(JX,Y,JX,Y) + R(JX,JY,JX,JY) = 2 R(X,JX,Y,JY)",
            tolerance: 1e-10,
            faultable: true,
            run: check_kahler_four_sectional,
        },
        CheckDef {
            id: "kahler.polarization",
            anchor: "R(Z+W, JZ+JW, Z-W, JZ-JW) and R(Z+JW, JZ-W, Z-JW, JZ+W) expand into holomorphic, bisectional and sectional terms",
            tolerance: 1e-10,
            faultable: true,
            run: check_kahler_polarization,
        },
        CheckDef {
            id: "fubini_study.kahler",
            anchor: PLUMBING,
            tolerance: 1e-12,
            faultable: true,
            run: check_kahler_invariance_of_models,
        },
        CheckDef {
            id: "fubini_study.einstein",
            anchor: "constant holomorphic curvature 4 gives Q(R) = 4(m+1) R",
            tolerance: 1e-9,
            faultable: true,
            run: check_fs_einstein,
        },
        CheckDef {
            id: "fubini_study.isotropic_min",
            anchor: "constant holomorphic curvature has nonnegative isotropic curvature, zero on frames {X, JX, Y, JY}",
            tolerance: 1e-6,
            faultable: true,
            run: check_fs_isotropic,
        },
        CheckDef {
            id: "fubini_study.boundary_q",
            anchor: "at a zero-isotropic frame of a tensor with nonnegative isotropic curvature, the same combination of Q(R) is nonnegative",
            tolerance: 1e-6,
            faultable: true,
            run: check_fs_boundary,
        },
        CheckDef {
            id: "r0.einstein",
            anchor: "Q(R0) = (2m+4) R0 and Ric(R0) = (m+2) g",
            tolerance: 1e-9,
            faultable: true,
            run: check_r0_einstein,
        },
        CheckDef {
            id: "r0.quaternionic_frames",
            anchor: "R0(X,JX,IX,JIX) = 0 and the frame {X, JX, IX, KX} has isotropic curvature 4",
            tolerance: 1e-12,
            faultable: true,
            run: check_r0_frames,
        },
        CheckDef {
            id: "r0.isotropic_min",
            anchor: "R0 has nonnegative isotropic curvature with minimum zero",
            tolerance: 1e-6,
            faultable: true,
            run: check_r0_isotropic,
        },
        CheckDef {
            id: "r0.boundary_q",
            anchor: "at a zero-isotropic frame of a tensor with nonnegative isotropic curvature, the same combination of Q(R) is nonnegative",
            tolerance: 1e-6,
            faultable: true,
            run: check_r0_boundary,
        },
        CheckDef {
            id: "hyperkahler.ricci_flat",
            anchor: "hyper-Kahler curvature tensors have vanishing Ricci tensor",
            tolerance: 1e-9,
            faultable: true,
            run: check_hk_ricci,
        },
        CheckDef {
            id: "hyperkahler.sphere_pairing",
            anchor: "B(R1, S) = 0 for hyper-Kahler R1 and constant curvature S",
            tolerance: 1e-9,
            faultable: true,
            run: check_hk_sphere,
        },
        CheckDef {
            id: "hyperkahler.sj_pairing",
            anchor: "B(R1, S_J) = 0 for hyper-Kahler R1 and S_J(X,Y,Z,W) = 2g(JX,Y)g(JZ,W) + g(JX,Z)g(JY,W) - g(JX,W)g(JY,Z)",
            tolerance: 1e-9,
            faultable: true,
            run: check_hk_sj,
        },
        CheckDef {
            id: "hyperkahler.r0_pairing",
            anchor: "B(R1, R0) = 0 for hyper-Kahler R1",
            tolerance: 1e-9,
            faultable: true,
            run: check_hk_r0,
        },
        CheckDef {
            id: "hyperkahler.cross_terms",
            anchor: "Q(R1 + k R0) = Q(R1) + k^2 Q(R0) for hyper-Kahler R1",
            tolerance: 1e-8,
            faultable: true,
            run: check_hk_cross_terms,
        },
        CheckDef {
            id: "hyperkahler.kahler_q_bound",
            anchor: "Q(R1)(X,JX,X,JX) <= -2 R1(X,JX,X,JX)^2 + 2 sum_pq R1(X,JX,e_p,e_q)^2",
            tolerance: 1e-8,
            faultable: true,
            run: check_hk_kahler_bound,
        },
        CheckDef {
            id: "hyperkahler.maximizer_first_order",
            anchor: "at a maximizer of R1(X,JX,X,JX): R1(X,JX,X,Y) = R1(X,JX,X,JY) = 0 for Y orthogonal to X, JX",
            tolerance: 1e-5,
            faultable: true,
            run: check_hk_first_order,
        },
        CheckDef {
            id: "hyperkahler.q_upper_bound",
            anchor: "at a maximizer over X and J in the sphere of structures: Q(R1)(X,JX,X,JX) <= (2m+4) R1(X,JX,X,JX)^2",
            tolerance: 1e-6,
            faultable: true,
            run: check_hk_upper_bound,
        },
    ];
    defs.sort_by_key(|d| d.id);
    defs
}

pub fn check_ids() -> Vec<&'static str> {
    definitions().into_iter().map(|d| d.id).collect()
}

fn evaluate(def: &CheckDef, ctx: &Ctx, fault: bool) -> CheckResult {
    let (status, measured, note) = match (def.run)(ctx, fault) {
        Ok(Eval::Measured(m)) => {
            let pass = m <= def.tolerance;
            (
                if pass { Status::Pass } else { Status::Fail },
                Some(m),
                None,
            )
        }
        Ok(Eval::Inapplicable(why)) => (Status::Inapplicable, None, Some(why.to_string())),
        Err(e) => (Status::Fail, None, Some(e.to_string())),
    };
    CheckResult {
        id: def.id,
        paper_anchor: def.anchor,
        status,
        measured,
        tolerance: def.tolerance,
        note,
    }
}

pub fn build_report(
    n: usize,
    seed: u64,
    samples: usize,
    fault: Option<&str>,
) -> Result<VerificationReport, CliError> {
    if !(4..=10).contains(&n) {
        return Err(CliError::Invalid(format!(
            "--n must lie in 4..=10, got {n}"
        )));
    }
    let defs = definitions();
    if let Some(id) = fault {
        match defs.iter().find(|d| d.id == id) {
            None => return Err(CliError::Invalid(format!("unknown check id {id:?}"))),
            Some(d) if !d.faultable => {
                return Err(CliError::Invalid(format!(
                    "check {id:?} does not take fault injection"
                )))
            }
            Some(_) => {}
        }
    }
    let start = Instant::now();
    let complex = n
        .is_multiple_of(2)
        .then(|| ComplexStructure::standard(n))
        .transpose()?;
    let triple = (n.is_multiple_of(4) && n >= 8)
        .then(|| QuaternionTriple::standard(n))
        .transpose()?;
    let kahler = complex.as_ref().map(kahler_subspace).transpose()?;
    let hyperkahler = triple.as_ref().map(hyperkahler_subspace).transpose()?;
    let ctx = Ctx {
        n,
        seed,
        samples,
        complex,
        triple,
        kahler,
        hyperkahler,
    };
    let checks: Vec<CheckResult> = defs
        .par_iter()
        .map(|d| evaluate(d, &ctx, fault == Some(d.id)))
        .collect();
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    Ok(VerificationReport {
        suite: "curvkit-verify",
        n,
        seed,
        samples,
        injected_fault: fault.map(str::to_string),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        inapplicable: count(Status::Inapplicable),
        checks,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn run(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let report = build_report(
        args.n,
        args.seed,
        args.samples,
        args.inject_fault.as_deref(),
    )?;
    write_output(args.out.as_deref(), &to_json(&report))?;
    Ok(if report.failed == 0 {
        Outcome::Success
    } else {
        Outcome::AssertionFailed
    })
}
