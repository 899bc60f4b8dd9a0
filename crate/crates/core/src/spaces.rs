//! Linear spaces of curvature tensors cut out by invariance under complex
//! structures, and the quaternionic decomposition `R = R₁ + κ R₀`.
//!
//! A space is computed as the nullspace of a constraint system over the
//! `N(N+1)/2` upper-triangular entries of the pair matrix. Coordinates are
//! weighted so that the Euclidean inner product equals the Frobenius inner product
//! on full tables; the right singular vectors therefore give a Frobenius-orthonormal
//! basis directly.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexStructure, QuaternionTriple};
use crate::error::{CurvError, Result};
use crate::models::model_r0;
use crate::pairs::{induced_pair_action, pair_count, pair_index};
use crate::random::{gaussian, rng};
use crate::tensor::{check_dim, CurvatureTensor};
use crate::tolerance;

/// Largest dimension for which spaces are assembled by default.
pub const DEFAULT_DIM_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubspaceKind {
    Generic,
    Kahler,
    Hyperkahler,
}

impl SubspaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SubspaceKind::Generic => "generic",
            SubspaceKind::Kahler => "kahler",
            SubspaceKind::Hyperkahler => "hyperkahler",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Structures {
    None,
    Complex(ComplexStructure),
    Quaternion(QuaternionTriple),
}

#[derive(Clone, Debug)]
pub struct CurvatureSubspace {
    n: usize,
    kind: SubspaceKind,
    basis: Vec<CurvatureTensor>,
    structures: Structures,
}

/// Upper-triangular coordinate bookkeeping for an `np × np` symmetric matrix.
struct Coords {
    np: usize,
    index: DMatrix<usize>,
    weight_sqrt: Vec<f64>,
}

impl Coords {
    fn new(np: usize) -> Self {
        let mut index = DMatrix::zeros(np, np);
        let mut weight_sqrt = Vec::with_capacity(np * (np + 1) / 2);
        let mut c = 0;
        for a in 0..np {
            for b in a..np {
                index[(a, b)] = c;
                index[(b, a)] = c;
                weight_sqrt.push(if a == b { 2.0 } else { 8f64.sqrt() });
                c += 1;
            }
        }
        Self {
            np,
            index,
            weight_sqrt,
        }
    }

    fn len(&self) -> usize {
        self.weight_sqrt.len()
    }

    fn to_matrix(&self, y: &[f64]) -> DMatrix<f64> {
        DMatrix::from_fn(self.np, self.np, |a, b| {
            let c = self.index[(a, b)];
            y[c] / self.weight_sqrt[c]
        })
    }
}

/// Accumulates constraint rows in weighted coordinates.
struct ConstraintBuilder<'a> {
    coords: &'a Coords,
    rows: Vec<Vec<(usize, f64)>>,
}

impl<'a> ConstraintBuilder<'a> {
    fn new(coords: &'a Coords) -> Self {
        Self {
            coords,
            rows: Vec::new(),
        }
    }

    /// Adds `Σ coeff · M[a,b] = 0`.
    fn push(&mut self, terms: impl IntoIterator<Item = (usize, usize, f64)>) {
        let row: Vec<(usize, f64)> = terms
            .into_iter()
            .filter(|t| t.2 != 0.0)
            .map(|(a, b, v)| {
                let c = self.coords.index[(a, b)];
                (c, v / self.coords.weight_sqrt[c])
            })
            .collect();
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    fn bianchi(&mut self, n: usize) {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        // R_ijkl + R_jkil + R_kijl with R_kijl = -M[ik, jl]
                        self.push([
                            (pair_index(n, i, j), pair_index(n, k, l), 1.0),
                            (pair_index(n, j, k), pair_index(n, i, l), 1.0),
                            (pair_index(n, i, k), pair_index(n, j, l), -1.0),
                        ]);
                    }
                }
            }
        }
    }

    /// `R(X, Y, AZ, AW) = R(X, Y, Z, W)`, i.e. `M L_A - M = 0`.
    fn invariance(&mut self, a: &DMatrix<f64>) {
        let l = induced_pair_action(a);
        let np = self.coords.np;
        for row in 0..np {
            for col in 0..np {
                let terms = (0..np)
                    .map(|e| (row, e, l[(e, col)]))
                    .chain(std::iter::once((row, col, -1.0)));
                // Merge duplicate coordinates before pushing.
                let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(np + 1);
                for (r, c, v) in terms {
                    if let Some(t) = merged.iter_mut().find(|t| t.0 == r && t.1 == c) {
                        t.2 += v;
                    } else {
                        merged.push((r, c, v));
                    }
                }
                self.push(merged);
            }
        }
    }

    fn dense(&self) -> DMatrix<f64> {
        let cols = self.coords.len();
        let rows = self.rows.len().max(cols);
        let mut c = DMatrix::zeros(rows, cols);
        for (r, row) in self.rows.iter().enumerate() {
            for &(col, v) in row {
                c[(r, col)] += v;
            }
        }
        c
    }
}

/// Orthonormal basis of the nullspace of `c` (columns of `c` are coordinates).
fn nullspace(c: &DMatrix<f64>, cutoff: f64) -> Vec<DVector<f64>> {
    let svd = c.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let thresh = cutoff * smax;
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| smax == 0.0 || s <= thresh)
        .map(|(i, _)| v_t.row(i).transpose().into_owned())
        .collect()
}

fn build(
    n: usize,
    kind: SubspaceKind,
    structures: Structures,
    constraints: &[&DMatrix<f64>],
) -> CurvatureSubspace {
    let coords = Coords::new(pair_count(n));
    let mut builder = ConstraintBuilder::new(&coords);
    builder.bianchi(n);
    for a in constraints {
        builder.invariance(a);
    }
    let basis = nullspace(&builder.dense(), tolerance::NULLSPACE_CUTOFF)
        .into_iter()
        .map(|y| CurvatureTensor::from_raw(n, coords.to_matrix(y.as_slice())))
        .collect();
    CurvatureSubspace {
        n,
        kind,
        basis,
        structures,
    }
}

fn check_range(n: usize, cap: usize) -> Result<()> {
    check_dim(n)?;
    if n > cap {
        return Err(CurvError::DimensionOutOfRange {
            n,
            min: 4,
            max: cap,
        });
    }
    Ok(())
}

/// Basis of all algebraic curvature tensors on ℝⁿ (dimension `n²(n²-1)/12`).
pub fn curvature_space_basis(n: usize) -> Result<CurvatureSubspace> {
    curvature_space_basis_capped(n, DEFAULT_DIM_CAP)
}

pub fn curvature_space_basis_capped(n: usize, cap: usize) -> Result<CurvatureSubspace> {
    check_range(n, cap)?;
    Ok(build(n, SubspaceKind::Generic, Structures::None, &[]))
}

/// Tensors with `R(X, Y, JZ, JW) = R(X, Y, Z, W)`.
pub fn kahler_subspace(j: &ComplexStructure) -> Result<CurvatureSubspace> {
    let n = j.dim();
    check_range(n, DEFAULT_DIM_CAP)?;
    Ok(build(
        n,
        SubspaceKind::Kahler,
        Structures::Complex(j.clone()),
        &[j.matrix()],
    ))
}

/// Tensors invariant in the second pair under each of `I`, `J`, `K`.
pub fn hyperkahler_subspace(t: &QuaternionTriple) -> Result<CurvatureSubspace> {
    let n = t.dim();
    if n < 8 {
        return Err(CurvError::DimensionOutOfRange {
            n,
            min: 8,
            max: DEFAULT_DIM_CAP,
        });
    }
    check_range(n, DEFAULT_DIM_CAP)?;
    Ok(build(
        n,
        SubspaceKind::Hyperkahler,
        Structures::Quaternion(t.clone()),
        &[t.i().matrix(), t.j().matrix(), t.k().matrix()],
    ))
}

/// Largest entry of `M L_A - M`: the violation of invariance under `A`.
pub fn invariance_residual(r: &CurvatureTensor, a: &DMatrix<f64>) -> f64 {
    let l = induced_pair_action(a);
    let m = r.pair_matrix();
    (m * l - m).abs().max()
}

pub fn kahler_residual(r: &CurvatureTensor, j: &ComplexStructure) -> f64 {
    invariance_residual(r, j.matrix())
}

pub fn hyperkahler_residual(r: &CurvatureTensor, t: &QuaternionTriple) -> f64 {
    t.structures()
        .iter()
        .map(|s| invariance_residual(r, s.matrix()))
        .fold(0.0, f64::max)
}

impl CurvatureSubspace {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> SubspaceKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CurvatureTensor] {
        &self.basis
    }

    pub fn structures(&self) -> &Structures {
        &self.structures
    }

    /// Gaussian combination of the basis, scaled; deterministic in `seed`.
    pub fn sample(&self, seed: u64, scale: f64) -> Result<CurvatureTensor> {
        if self.basis.is_empty() {
            return Err(CurvError::EmptySubspace);
        }
        let mut g = rng(seed);
        let mut m = DMatrix::zeros(
            self.basis[0].pair_matrix().nrows(),
            self.basis[0].pair_matrix().ncols(),
        );
        for b in &self.basis {
            m += b.pair_matrix() * (gaussian(&mut g) * scale);
        }
        Ok(CurvatureTensor::from_raw(self.n, m))
    }

    /// Frobenius-orthogonal projection onto the span.
    pub fn project(&self, r: &CurvatureTensor) -> Result<CurvatureTensor> {
        if r.dim() != self.n {
            return Err(CurvError::DimensionMismatch {
                expected: self.n,
                found: r.dim(),
            });
        }
        let mut acc = CurvatureTensor::zero(self.n)?;
        for b in &self.basis {
            acc = &acc + &b.scaled(r.inner(b));
        }
        Ok(acc)
    }

    /// `‖R - P(R)‖` (absolute, Frobenius).
    pub fn residual(&self, r: &CurvatureTensor) -> Result<f64> {
        Ok((r - &self.project(r)?).norm())
    }

    pub fn gram_defect(&self) -> f64 {
        let d = self.basis.len();
        let mut worst = 0.0_f64;
        for a in 0..d {
            for b in a..d {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((self.basis[a].inner(&self.basis[b]) - target).abs());
            }
        }
        worst
    }

    /// Largest violation of the defining constraints over the basis.
    pub fn constraint_defect(&self) -> f64 {
        self.basis
            .iter()
            .map(|b| {
                let inv = match &self.structures {
                    Structures::None => 0.0,
                    Structures::Complex(j) => kahler_residual(b, j),
                    Structures::Quaternion(t) => hyperkahler_residual(b, t),
                };
                inv.max(b.bianchi_defect())
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct QkDecomposition {
    pub r1: CurvatureTensor,
    pub kappa: f64,
    /// Largest violation of the three invariances by `r1`.
    pub residual: f64,
}

/// `R = R₁ + κ R₀` with `κ = scal(R) / scal(R₀)`, `scal(R₀) = 4m(m+2)`.
pub fn qk_decompose(r: &CurvatureTensor, t: &QuaternionTriple) -> Result<QkDecomposition> {
    let n = t.dim();
    if n < 8 {
        return Err(CurvError::DimensionParity {
            n,
            requirement: "a multiple of 4, at least 8",
        });
    }
    if r.dim() != n {
        return Err(CurvError::DimensionMismatch {
            expected: n,
            found: r.dim(),
        });
    }
    let r0 = model_r0(t)?;
    let kappa = r.scalar() / r0.scalar();
    let r1 = r - &r0.scaled(kappa);
    let residual = hyperkahler_residual(&r1, t);
    Ok(QkDecomposition {
        r1,
        kappa,
        residual,
    })
}
