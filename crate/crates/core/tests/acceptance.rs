//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::time::Instant;

use curvkit::fixtures::fixture;
use curvkit::random::{random_curvature, rng, stiefel_point};
use curvkit::*;
use nalgebra::DMatrix;
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn hk8() -> (QuaternionTriple, CurvatureSubspace) {
    let t = QuaternionTriple::standard(8).unwrap();
    let s = hyperkahler_subspace(&t).unwrap();
    (t, s)
}

fn rel(a: &CurvatureTensor, b: &CurvatureTensor) -> f64 {
    (a - b).norm() / b.norm()
}

fn c1_sphere_pairing() -> Outcome {
    let (_, space) = hk8();
    let s = model_sphere(8, 1.0).unwrap();
    let worst = space
        .basis()
        .iter()
        .map(|b| bform(b, &s).unwrap().norm() / (b.norm() * s.norm()))
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-9 && space.dimension() > 0,
        format!(
            "max ‖B(b,S)‖/(‖b‖‖S‖) = {worst:.3e} over {} basis elements (tol 1e-9)",
            space.dimension()
        ),
    )
}

fn c2_sj_pairing() -> Outcome {
    let (t, space) = hk8();
    let mut worst = 0.0_f64;
    for a in t.structures() {
        let sa = model_sj(a).unwrap();
        for b in space.basis() {
            worst = worst.max(bform(b, &sa).unwrap().norm() / (b.norm() * sa.norm()));
        }
    }
    outcome(
        worst <= 1e-9,
        format!("max ‖B(b,S_A)‖/(‖b‖‖S_A‖) = {worst:.3e} for A in I,J,K (tol 1e-9)"),
    )
}

fn c3_cross_terms() -> Outcome {
    let (t, space) = hk8();
    let r0 = model_r0(&t).unwrap();
    let q0 = qform(&r0);
    let mut g = rng(3);
    let mut worst = 0.0_f64;
    for i in 0..50 {
        let r1 = space.sample(100 + i, 1.0).unwrap();
        let kappa: f64 = g.random_range(-3.0..3.0);
        let lhs = qform(&(&r1 + &r0.scaled(kappa)));
        let q1 = qform(&r1);
        let rhs = &q1 + &q0.scaled(kappa * kappa);
        let scale = q1.norm() + kappa * kappa * q0.norm();
        worst = worst.max((&lhs - &rhs).norm() / scale);
    }
    outcome(
        worst <= 1e-8,
        format!("max relative defect {worst:.3e} over 50 samples (tol 1e-8)"),
    )
}

fn c4_r0_einstein() -> Outcome {
    let mut q_worst = 0.0_f64;
    let mut ric_worst = 0.0_f64;
    for n in [8, 12] {
        let t = QuaternionTriple::standard(n).unwrap();
        let m = (n / 4) as f64;
        let r0 = model_r0(&t).unwrap();
        q_worst = q_worst.max(rel(&qform(&r0), &r0.scaled(2.0 * m + 4.0)));
        let target = DMatrix::<f64>::identity(n, n) * (m + 2.0);
        ric_worst = ric_worst.max((r0.ricci() - target).abs().max());
    }
    outcome(
        q_worst <= 1e-9 && ric_worst <= 1e-10,
        format!("Q(R0) rel. defect {q_worst:.3e} (tol 1e-9), Ricci defect {ric_worst:.3e} (tol 1e-10), n = 8, 12"),
    )
}

fn c5_shifted_q() -> Outcome {
    let mut g = rng(5);
    let mut worst = 0.0_f64;
    let mut ric_worst = 0.0_f64;
    for n in [4, 5, 6] {
        let s = model_sphere(n, 1.0).unwrap();
        let nf = n as f64;
        for _ in 0..20 {
            let r = &random_curvature(&mut g, n).weyl() + &s;
            ric_worst = ric_worst.max(
                (r.ricci() - DMatrix::identity(n, n) * (nf - 1.0))
                    .abs()
                    .max(),
            );
            let kappa: f64 = g.random_range(-2.0..2.0);
            let lhs = qform(&(&r - &s.scaled(kappa)));
            let rhs = &qform(&r) + &s.scaled(2.0 * (nf - 1.0) * kappa * (kappa - 2.0));
            worst = worst.max((&lhs - &rhs).norm() / (1.0 + rhs.norm()));
        }
    }
    outcome(
        worst <= 1e-8 && ric_worst <= 1e-10,
        format!("max defect {worst:.3e} (tol 1e-8), Einstein normalization defect {ric_worst:.3e}, n = 4, 5, 6"),
    )
}

fn brute_force_min(r: &CurvatureTensor, samples: usize, seed: u64) -> f64 {
    let mut g = rng(seed);
    (0..samples)
        .map(|_| {
            let f = FourFrame::from_matrix(stiefel_point(&mut g, r.dim(), 4)).unwrap();
            isotropic_curvature(r, &f).unwrap()
        })
        .fold(f64::INFINITY, f64::min)
}

fn c6_c7_isotropic() -> (Outcome, Outcome) {
    let (fs, _) = model_fubini_study(2, 4.0).unwrap();
    let r0 = model_r0(&QuaternionTriple::standard(8).unwrap()).unwrap();
    let cfg = OptimizerConfig::default();
    let mut lines6 = Vec::new();
    let mut lines7 = Vec::new();
    let mut pass6 = true;
    let mut pass7 = true;
    for (name, r) in [("FS(2,4)", &fs), ("R0 n=8", &r0)] {
        let start = Instant::now();
        let res = min_isotropic(r, &cfg).unwrap();
        let lowest = res
            .restart_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let brute = brute_force_min(r, 100_000, 6);
        let elapsed = start.elapsed().as_secs_f64();
        let ok = res.value.abs() <= 1e-6 && lowest >= -1e-8 && brute >= -1e-12 && elapsed < 120.0;
        pass6 &= ok;
        lines6.push(format!(
            "{name}: min {:.2e}, lowest restart {:.2e}, brute-force min {brute:.3e}, {elapsed:.1}s",
            res.value, lowest
        ));

        let frame = res.point.frame().unwrap();
        let report = boundary_q_check(r, frame, res.value, 1e-6).unwrap();
        let ok7 = report.status == CheckStatus::Pass;
        pass7 &= ok7;
        lines7.push(format!(
            "{name}: Q-combination {:.3e} ({:?})",
            report.q_combination.unwrap_or(f64::NAN),
            report.status
        ));
    }
    (
        outcome(pass6, lines6.join("; ")),
        outcome(pass7, format!("{} (tol -1e-6)", lines7.join("; "))),
    )
}

fn c8_qk_bound() -> Outcome {
    let (t, space) = hk8();
    let cfg = OptimizerConfig::default().with_restarts(32);
    let mut first_order = 0.0_f64;
    let mut bound_slack = f64::INFINITY;
    let mut all = true;
    for i in 0..20 {
        let r1 = space.sample(800 + i, 1.0).unwrap();
        let rep = qk_q_bound_check(&r1, &t, &cfg.clone().with_seed(i), 1e-5).unwrap();
        let fo = rep
            .first_order
            .first_order_y
            .max(rep.first_order.first_order_jy);
        first_order = first_order.max(fo);
        let slack = rep.upper_bound + 1e-6 - rep.q_value;
        bound_slack = bound_slack.min(slack);
        all &= fo <= 1e-5 && slack >= 0.0;
    }
    outcome(
        all,
        format!("max first-order residual {first_order:.3e} (tol 1e-5), min bound slack {bound_slack:.3e} over 20 samples"),
    )
}

fn c9_flow() -> Outcome {
    let cfg = |t_end| FlowConfig {
        t_end,
        optimizer: None,
        ..FlowConfig::default()
    };
    let s4 = model_sphere(4, 1.0).unwrap();
    let (rs, _) = integrate_q_flow(&s4, &cfg(0.1)).unwrap();
    let lam_s = scalar_blowup_oracle(6.0, 1.0, 0.1).unwrap();
    let err_s = rel(&rs, &s4.scaled(lam_s));

    let r0 = model_r0(&QuaternionTriple::standard(8).unwrap()).unwrap();
    let (rr, _) = integrate_q_flow(&r0, &cfg(0.05)).unwrap();
    let lam_r = scalar_blowup_oracle(8.0, 1.0, 0.05).unwrap();
    let err_r = rel(&rr, &r0.scaled(lam_r));

    // Fixed-step RK4 on the sphere ray over a decade of step counts.
    let steps = [10usize, 20, 40, 80, 160];
    let errs: Vec<f64> = steps
        .iter()
        .map(|&k| rel(&integrate_fixed(&s4, 0.1 / k as f64, k), &s4.scaled(lam_s)))
        .collect();
    let xs: Vec<f64> = steps.iter().map(|&k| (0.1 / k as f64).ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 5.0, ys.iter().sum::<f64>() / 5.0);
    let order = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();

    outcome(
        err_s <= 1e-6 && err_r <= 1e-6 && (order - 4.0).abs() <= 0.3,
        format!("sphere ray rel. error {err_s:.2e}, R0 ray rel. error {err_r:.2e} (tol 1e-6), observed order {order:.3}"),
    )
}

fn c10_gradient() -> Outcome {
    let mut g = rng(10);
    let h = 1e-5;
    let mut worst = 0.0_f64;
    for case in 0..100 {
        let n = 4 + case % 5;
        let r = random_curvature(&mut g, n);
        let x = stiefel_point(&mut g, n, 4);
        let (_, grad) = isotropic_value_grad(&r, &x);
        let mut fd = DMatrix::zeros(n, 4);
        for i in 0..n {
            for j in 0..4 {
                let mut xp = x.clone();
                xp[(i, j)] += h;
                let mut xm = x.clone();
                xm[(i, j)] -= h;
                fd[(i, j)] =
                    (isotropic_value_grad(&r, &xp).0 - isotropic_value_grad(&r, &xm).0) / (2.0 * h);
            }
        }
        worst = worst.max((&grad - &fd).norm() / grad.norm().max(1e-12));
    }
    outcome(
        worst <= 1e-5,
        format!("max relative error {worst:.3e} over 100 cases (tol 1e-5)"),
    )
}

fn c11_dimensions() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 4..=8 {
        let d = curvature_space_basis(n).unwrap().dimension();
        let expected = n * n * (n * n - 1) / 12;
        ok &= d == expected && fixture("generic", n).unwrap().dimension == d;
        parts.push(format!("generic n={n}: {d}"));
    }
    let kd = kahler_subspace(&ComplexStructure::standard(4).unwrap())
        .unwrap()
        .dimension();
    ok &= kd == fixture("kahler", 4).unwrap().dimension;
    parts.push(format!("kahler n=4: {kd}"));
    let hd = hk8().1.dimension();
    ok &= hd == fixture("hyperkahler", 8).unwrap().dimension;
    parts.push(format!("hyperkahler n=8: {hd}"));
    outcome(ok, parts.join(", "))
}

fn print_line(id: usize, name: &str, o: &Outcome, secs: f64) {
    println!(
        "criterion {id:>2} [{}] {name}: {} ({secs:.2}s)",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail
    );
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let single: [(usize, &str, fn() -> Outcome); 5] = [
        (
            1,
            "hyper-Kähler basis is B-orthogonal to the sphere",
            c1_sphere_pairing,
        ),
        (
            2,
            "hyper-Kähler basis is B-orthogonal to S_I, S_J, S_K",
            c2_sj_pairing,
        ),
        (3, "Q(R1 + κR0) splits without cross terms", c3_cross_terms),
        (4, "R0 is Einstein with Q(R0) = (2m+4)R0", c4_r0_einstein),
        (5, "Q of a shifted Einstein tensor", c5_shifted_q),
    ];
    let rest: [(usize, &str, fn() -> Outcome); 4] = [
        (
            8,
            "maximizer conditions and the quadratic bound",
            c8_qk_bound,
        ),
        (9, "flow along rays and integrator order", c9_flow),
        (10, "analytic frame gradient", c10_gradient),
        (11, "subspace dimensions", c11_dimensions),
    ];
    for (id, name, f) in single {
        let t = Instant::now();
        let o = f();
        print_line(id, name, &o, t.elapsed().as_secs_f64());
        results.push((id, o));
    }
    // Criterion 7 probes the frames found by criterion 6.
    let t = Instant::now();
    let (o6, o7) = c6_c7_isotropic();
    let secs = t.elapsed().as_secs_f64();
    print_line(
        6,
        "minimum isotropic curvature of the boundary models",
        &o6,
        secs,
    );
    print_line(7, "Q-combination at zero-isotropic frames", &o7, secs);
    results.push((6, o6));
    results.push((7, o7));
    for (id, name, f) in rest {
        let t = Instant::now();
        let o = f();
        print_line(id, name, &o, t.elapsed().as_secs_f64());
        results.push((id, o));
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.1.pass).map(|r| r.0).collect();
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        results.len() - failed.len(),
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
