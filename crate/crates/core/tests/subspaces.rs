mod common;

use common::{admissible_partner, eval, rank};
use curvkit::fixtures::{fixture, subspace_fixtures};
use curvkit::pairs::{pair_count, pair_index, signed_pair};
use curvkit::random::{random_table, rng, unit_vector};
use curvkit::*;
use nalgebra::{DMatrix, DVector};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Nullity of the full symmetry system acting on all `n⁴` table entries.
fn full_table_nullity(n: usize) -> usize {
    let idx = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * n + k) * n + l;
    let size = n.pow(4);
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let t = idx(i, j, k, l);
                    rows.push(vec![(t, 1.0), (idx(j, i, k, l), 1.0)]);
                    rows.push(vec![(t, 1.0), (idx(i, j, l, k), 1.0)]);
                    rows.push(vec![(t, 1.0), (idx(k, l, i, j), -1.0)]);
                    rows.push(vec![
                        (t, 1.0),
                        (idx(j, k, i, l), 1.0),
                        (idx(k, i, j, l), 1.0),
                    ]);
                }
            }
        }
    }
    // Rank of CᵀC equals the rank of C.
    let mut ctc = DMatrix::<f64>::zeros(size, size);
    for row in &rows {
        for &(a, va) in row {
            for &(b, vb) in row {
                ctc[(a, b)] += va * vb;
            }
        }
    }
    let eig = ctc.symmetric_eigen();
    let emax = eig.eigenvalues.max();
    size - eig
        .eigenvalues
        .iter()
        .filter(|&&e| e > 1e-10 * emax)
        .count()
}

#[test]
fn generic_dimension_matches_full_table_oracle() {
    for n in [4, 5] {
        let d = curvature_space_basis(n).unwrap().dimension();
        assert_eq!(d, full_table_nullity(n));
        assert_eq!(d, n * n * (n * n - 1) / 12);
    }
}

#[test]
fn projection_has_the_generic_rank() {
    let n: usize = 4;
    let size = n.pow(4);
    let cols: Vec<Vec<f64>> = (0..size)
        .map(|c| {
            let mut t = vec![0.0; size];
            t[c] = 1.0;
            project_to_curvature(n, &t).unwrap().to_table()
        })
        .collect();
    let m = DMatrix::from_fn(size, size, |r, c| cols[c][r]);
    assert_eq!(rank(&m, 1e-10), 20);
    // Random tables land in the same 20-dimensional space.
    let space = curvature_space_basis(n).unwrap();
    let mut g = rng(1);
    for _ in 0..5 {
        let r = project_to_curvature(n, &random_table(&mut g, n)).unwrap();
        assert!(space.residual(&r).unwrap() < 1e-12 * r.norm());
    }
}

#[test]
fn generic_dimensions_through_eight() {
    for n in 4..=8 {
        let s = curvature_space_basis(n).unwrap();
        assert_eq!(s.dimension(), n * n * (n * n - 1) / 12);
        assert_eq!(s.kind(), SubspaceKind::Generic);
    }
}

/// Antisymmetric matrices commuting with every given structure, as pair-coordinate vectors.
fn commuting_two_forms(n: usize, structures: &[&DMatrix<f64>]) -> Vec<DVector<f64>> {
    let np = pair_count(n);
    let forms: Vec<DMatrix<f64>> = (0..np)
        .map(|p| {
            let mut w = DVector::zeros(np);
            w[p] = 1.0;
            pairs::antisym_from_pairs(n, &w)
        })
        .collect();
    // Columns: vec([A_p, J]) for each basis form.
    let blocks: Vec<DMatrix<f64>> = structures
        .iter()
        .map(|j| {
            let mut c = DMatrix::zeros(n * n, np);
            for (p, a) in forms.iter().enumerate() {
                let comm = a * *j - *j * a;
                c.set_column(p, &DVector::from_column_slice(comm.as_slice()));
            }
            c
        })
        .collect();
    let mut stacked = DMatrix::zeros(n * n * blocks.len(), np);
    for (b, block) in blocks.iter().enumerate() {
        stacked.rows_mut(b * n * n, n * n).copy_from(block);
    }
    let padded = if stacked.nrows() < np {
        stacked.clone().resize(np, np, 0.0)
    } else {
        stacked
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.unwrap();
    let smax = svd.singular_values.max();
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= 1e-10 * smax)
        .map(|(i, _)| vt.row(i).transpose())
        .collect()
}

/// `R_ijkl` read from a raw pair matrix.
fn raw_component(n: usize, m: &DMatrix<f64>, i: usize, j: usize, k: usize, l: usize) -> f64 {
    match (signed_pair(n, i, j), signed_pair(n, k, l)) {
        (Some((a, sa)), Some((b, sb))) => sa * sb * m[(a, b)],
        _ => 0.0,
    }
}

/// dim Sym²(h) ∩ ker(Bianchi), for h spanned by `forms`.
fn symmetric_square_bianchi_kernel(n: usize, forms: &[DVector<f64>]) -> usize {
    let mut family = Vec::new();
    for a in 0..forms.len() {
        for b in a..forms.len() {
            family.push(&forms[a] * forms[b].transpose() + &forms[b] * forms[a].transpose());
        }
    }
    let quads: Vec<[usize; 4]> = (0..n)
        .flat_map(|i| {
            (i + 1..n).flat_map(move |j| {
                (j + 1..n).flat_map(move |k| (k + 1..n).map(move |l| [i, j, k, l]))
            })
        })
        .collect();
    let bianchi = DMatrix::from_fn(quads.len().max(1), family.len(), |q, f| {
        if q >= quads.len() {
            return 0.0;
        }
        let [i, j, k, l] = quads[q];
        let m = &family[f];
        raw_component(n, m, i, j, k, l)
            + raw_component(n, m, j, k, i, l)
            + raw_component(n, m, k, i, j, l)
    });
    // The symmetric products are linearly independent, so the kernel dimension is
    // the family size minus the rank of the Bianchi map.
    let gram = DMatrix::from_fn(family.len(), family.len(), |a, b| family[a].dot(&family[b]));
    assert_eq!(rank(&gram, 1e-10), family.len());
    family.len() - rank(&bianchi, 1e-10)
}

#[test]
fn kahler_dimension_matches_constructive_oracle() {
    for m in [2, 3, 4] {
        let n = 2 * m;
        let j = ComplexStructure::standard(n).unwrap();
        let forms = commuting_two_forms(n, &[j.matrix()]);
        assert_eq!(forms.len(), m * m);
        let oracle = symmetric_square_bianchi_kernel(n, &forms);
        let built = kahler_subspace(&j).unwrap().dimension();
        assert_eq!(built, oracle);
        assert_eq!(built, (m * (m + 1) / 2).pow(2));
        assert_eq!(fixture("kahler", n).unwrap().dimension, built);
    }
}

#[test]
fn hyperkahler_dimension_matches_constructive_oracle() {
    let t = QuaternionTriple::standard(8).unwrap();
    let forms = commuting_two_forms(8, &[t.i().matrix(), t.j().matrix(), t.k().matrix()]);
    assert_eq!(forms.len(), 10);
    let oracle = symmetric_square_bianchi_kernel(8, &forms);
    let built = hyperkahler_subspace(&t).unwrap().dimension();
    assert_eq!(built, oracle);
    assert_eq!(built, binomial(2 * 2 + 3, 4));
    assert_eq!(fixture("hyperkahler", 8).unwrap().dimension, built);
}

#[test]
fn frozen_fixtures_are_reproduced() {
    let fixtures = subspace_fixtures().unwrap();
    assert!(fixtures.len() >= 9);
    for f in fixtures {
        assert_eq!(f.constraint_cutoff, tolerance::NULLSPACE_CUTOFF);
        let d = match f.label.as_str() {
            "generic" => curvature_space_basis(f.n).unwrap().dimension(),
            "kahler" => kahler_subspace(&ComplexStructure::standard(f.n).unwrap())
                .unwrap()
                .dimension(),
            "hyperkahler" => hyperkahler_subspace(&QuaternionTriple::standard(f.n).unwrap())
                .unwrap()
                .dimension(),
            other => panic!("unknown label {other}"),
        };
        assert_eq!(d, f.dimension, "{} n={}", f.label, f.n);
    }
}

#[test]
fn bases_are_orthonormal_and_satisfy_fresh_constraints() {
    let t = QuaternionTriple::standard(8).unwrap();
    let j6 = ComplexStructure::standard(6).unwrap();
    let spaces = [
        curvature_space_basis(6).unwrap(),
        kahler_subspace(&j6).unwrap(),
        hyperkahler_subspace(&t).unwrap(),
    ];
    let mut g = rng(3);
    for s in &spaces {
        assert!(s.gram_defect() < 1e-10);
        assert!(s.constraint_defect() < 1e-10);
        let n = s.dim();
        let structures: Vec<ComplexStructure> = match s.structures() {
            spaces::Structures::None => vec![],
            spaces::Structures::Complex(j) => vec![j.clone()],
            spaces::Structures::Quaternion(t) => t.structures().to_vec(),
        };
        for b in s.basis() {
            // Re-validation through the public constructor.
            CurvatureTensor::from_pair_matrix_with_tol(n, b.pair_matrix().clone(), 1e-10).unwrap();
            // Invariance evaluated pointwise at random vectors.
            let v: Vec<_> = (0..4).map(|_| unit_vector(&mut g, n)).collect();
            for a in &structures {
                let lhs = eval(b, &v[0], &v[1], &a.apply(&v[2]), &a.apply(&v[3]));
                let rhs = eval(b, &v[0], &v[1], &v[2], &v[3]);
                assert!((lhs - rhs).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn spaces_are_nested() {
    let t = QuaternionTriple::standard(8).unwrap();
    let hk = hyperkahler_subspace(&t).unwrap();
    let generic = curvature_space_basis(8).unwrap();
    let kahlers: Vec<_> = t
        .structures()
        .iter()
        .map(|a| kahler_subspace(a).unwrap())
        .collect();
    for seed in 0..5 {
        let r = hk.sample(seed, 1.0).unwrap();
        for k in &kahlers {
            assert!(k.residual(&r).unwrap() < 1e-10);
        }
        let rk = kahlers[1].sample(seed, 1.0).unwrap();
        assert!(generic.residual(&rk).unwrap() < 1e-10);
        assert!(hk.residual(&rk).unwrap() > 1e-3);
    }
}

#[test]
fn hyperkahler_elements_are_ricci_flat_and_exclude_r0() {
    let t = QuaternionTriple::standard(8).unwrap();
    let hk = hyperkahler_subspace(&t).unwrap();
    for seed in 0..10 {
        assert!(hk.sample(seed, 1.0).unwrap().ricci().abs().max() < 1e-9);
    }
    for b in hk.basis() {
        assert!(b.ricci().abs().max() < 1e-9);
    }
    let r0 = model_r0(&t).unwrap();
    assert!(hk.residual(&r0).unwrap() > 0.5 * r0.norm());
    assert!(spaces::hyperkahler_residual(&r0, &t) > 0.1);
}

#[test]
fn kahler_span_contains_the_models() {
    let (fs, j) = model_fubini_study(2, 4.0).unwrap();
    let s = kahler_subspace(&j).unwrap();
    assert!(s.residual(&fs).unwrap() < 1e-10);
    assert_eq!(s.residual(&CurvatureTensor::zero(4).unwrap()).unwrap(), 0.0);
}

#[test]
fn sampled_kahler_elements_satisfy_the_sectional_identity() {
    let j = ComplexStructure::standard(4).unwrap();
    let s = kahler_subspace(&j).unwrap();
    let mut g = rng(8);
    for seed in 0..10 {
        let r = s.sample(seed, 2.0).unwrap();
        let x = unit_vector(&mut g, 4);
        let y = admissible_partner(&mut g, &j, &x, &[]);
        let lhs = four_sectional_sum(&r, &j, &x, &y);
        assert!((lhs - 2.0 * orthogonal_bisectional(&r, &j, &x, &y).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn pairings_vanish_on_every_hyperkahler_basis_element() {
    let t = QuaternionTriple::standard(8).unwrap();
    let hk = hyperkahler_subspace(&t).unwrap();
    let sphere = model_sphere(8, 1.0).unwrap();
    let r0 = model_r0(&t).unwrap();
    let sj: Vec<_> = t
        .structures()
        .iter()
        .map(|a| model_sj(a).unwrap())
        .collect();
    for b in hk.basis() {
        assert!(bform(b, &sphere).unwrap().norm() < 1e-10);
        for s in &sj {
            assert!(bform(b, s).unwrap().norm() < 1e-10);
        }
        assert!(bform(b, &r0).unwrap().norm() < 1e-10);
    }
    // Control: a generic tensor does pair nontrivially with the sphere.
    let generic = curvature_space_basis(8).unwrap().sample(1, 1.0).unwrap();
    assert!(bform(&generic, &sphere).unwrap().norm() > 1e-2);
}

#[test]
fn cross_terms_vanish_for_sampled_kappa() {
    let t = QuaternionTriple::standard(8).unwrap();
    let hk = hyperkahler_subspace(&t).unwrap();
    let r0 = model_r0(&t).unwrap();
    for (seed, kappa) in (0..6).zip([-2.0, -1.0, 0.0, 1.0, 2.0, 3.0]) {
        let r1 = hk.sample(seed, 1.0).unwrap();
        let lhs = qform(&(&r1 + &r0.scaled(kappa)));
        let rhs = &qform(&r1) + &qform(&r0).scaled(kappa * kappa);
        assert!((&lhs - &rhs).norm() <= 1e-9 * lhs.norm().max(1.0));
    }
}

#[test]
fn kahler_bound_on_q_for_hyperkahler_samples() {
    let t = QuaternionTriple::standard(8).unwrap();
    let hk = hyperkahler_subspace(&t).unwrap();
    let mut g = rng(44);
    let e: Vec<DVector<f64>> = (0..8).map(|i| common::basis_vector(8, i)).collect();
    for seed in 0..10 {
        let r1 = hk.sample(seed, 1.0).unwrap();
        let q = qform(&r1);
        for a in t.structures() {
            let x = unit_vector(&mut g, 8);
            let jx = a.apply(&x);
            let h = eval(&r1, &x, &jx, &x, &jx);
            let mut sum = 0.0;
            for p in &e {
                for qv in &e {
                    sum += eval(&r1, &x, &jx, p, qv).powi(2);
                }
            }
            let lhs = eval(&q, &x, &jx, &x, &jx);
            assert!(
                lhs <= -2.0 * h * h + 2.0 * sum + 1e-8,
                "{lhs} > {}",
                -2.0 * h * h + 2.0 * sum
            );
        }
    }
}

#[test]
fn pair_index_agrees_with_signed_pair() {
    for n in 4..7 {
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(signed_pair(n, i, j), Some((pair_index(n, i, j), 1.0)));
                assert_eq!(signed_pair(n, j, i), Some((pair_index(n, i, j), -1.0)));
            }
            assert_eq!(signed_pair(n, i, i), None);
        }
    }
}
