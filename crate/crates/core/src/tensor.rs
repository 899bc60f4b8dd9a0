//! The algebraic curvature tensor value type.
//!
//! A tensor on ℝⁿ (orthonormal basis, metric = identity) is stored as the
//! symmetric `N × N` matrix `M[(ij),(kl)] = R_{ijkl}` over the lex-ordered basis
//! `{e_i ∧ e_j : i < j}`, `N = n(n-1)/2`. Antisymmetry in each pair and pair
//! symmetry are then structural; the first Bianchi identity is equivalent to the
//! vanishing of the Λ⁴ component and is checked on construction.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};

use crate::error::{CurvError, Result};
use crate::pairs::{pair_count, pair_index, pair_list, signed_pair, wedge};
use crate::tolerance;

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    n: usize,
    m: DMatrix<f64>,
}

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if n < 4 {
        return Err(CurvError::DimensionTooSmall { n });
    }
    Ok(())
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

impl CurvatureTensor {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        let np = pair_count(n);
        Ok(Self {
            n,
            m: DMatrix::zeros(np, np),
        })
    }

    /// Builds a tensor from its pair matrix, validating symmetry and the Bianchi
    /// identity at the default relative tolerance.
    pub fn from_pair_matrix(n: usize, m: DMatrix<f64>) -> Result<Self> {
        Self::from_pair_matrix_with_tol(n, m, tolerance::VALIDATION_REL)
    }

    pub fn from_pair_matrix_with_tol(n: usize, m: DMatrix<f64>, tol: f64) -> Result<Self> {
        check_dim(n)?;
        let np = pair_count(n);
        if m.nrows() != np || m.ncols() != np {
            return Err(CurvError::DimensionMismatch {
                expected: np,
                found: m.nrows().max(m.ncols()),
            });
        }
        if m.iter().any(|v| !v.is_finite()) {
            return Err(CurvError::NonFinite);
        }
        let scale = max_abs(&m).max(f64::MIN_POSITIVE);
        let asym = max_abs(&(&m - m.transpose()));
        if asym > tol * scale {
            return Err(CurvError::SymmetryViolation {
                what: "pair symmetry",
                defect: asym / scale,
                tolerance: tol,
            });
        }
        let t = Self::from_raw(n, m);
        let bianchi = t.bianchi_defect();
        if bianchi > tol * scale {
            return Err(CurvError::SymmetryViolation {
                what: "first Bianchi identity",
                defect: bianchi / scale,
                tolerance: tol,
            });
        }
        Ok(t)
    }

    /// Symmetrizes `m` without any Bianchi check. Callers guarantee validity.
    pub(crate) fn from_raw(n: usize, m: DMatrix<f64>) -> Self {
        let m = (&m + m.transpose()) * 0.5;
        Self { n, m }
    }

    /// Validates a full `n⁴` table (row-major in `i,j,k,l`) against every
    /// curvature symmetry and converts it to canonical storage.
    pub fn from_table(n: usize, table: &[f64]) -> Result<Self> {
        let projected = project_to_curvature(n, table)?;
        let scale = table
            .iter()
            .fold(0.0_f64, |a, v| a.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        let defect = projected
            .to_table()
            .iter()
            .zip(table)
            .fold(0.0_f64, |a, (p, t)| a.max((p - t).abs()));
        if defect > tolerance::VALIDATION_REL * scale {
            return Err(CurvError::SymmetryViolation {
                what: "curvature symmetries",
                defect: defect / scale,
                tolerance: tolerance::VALIDATION_REL,
            });
        }
        Ok(projected)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn pair_matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    /// `R_{ijkl}`.
    #[inline]
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        match (signed_pair(self.n, i, j), signed_pair(self.n, k, l)) {
            (Some((a, sa)), Some((b, sb))) => sa * sb * self.m[(a, b)],
            _ => 0.0,
        }
    }

    /// Dense `n⁴` table, index `((i·n + j)·n + k)·n + l`.
    pub fn to_table(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        out[((i * n + j) * n + k) * n + l] = self.component(i, j, k, l);
                    }
                }
            }
        }
        out
    }

    /// Multilinear evaluation `R(X, Y, Z, W)`.
    pub fn evaluate(
        &self,
        x: &DVector<f64>,
        y: &DVector<f64>,
        z: &DVector<f64>,
        w: &DVector<f64>,
    ) -> Result<f64> {
        for v in [x, y, z, w] {
            if v.len() != self.n {
                return Err(CurvError::DimensionMismatch {
                    expected: self.n,
                    found: v.len(),
                });
            }
        }
        Ok(self.eval(x, y, z, w))
    }

    #[inline]
    pub(crate) fn eval(
        &self,
        x: &DVector<f64>,
        y: &DVector<f64>,
        z: &DVector<f64>,
        w: &DVector<f64>,
    ) -> f64 {
        let xy = wedge(x, y);
        let zw = wedge(z, w);
        xy.dot(&(&self.m * zw))
    }

    /// Sectional-type value `R(X, Y, X, Y)`.
    pub(crate) fn sectional(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        let xy = wedge(x, y);
        xy.dot(&(&self.m * &xy))
    }

    /// `Ric_{jl} = Σ_i R_{ijil}`.
    pub fn ricci(&self) -> DMatrix<f64> {
        let n = self.n;
        let mut ric = DMatrix::zeros(n, n);
        for j in 0..n {
            for l in j..n {
                let s: f64 = (0..n).map(|i| self.component(i, j, i, l)).sum();
                ric[(j, l)] = s;
                ric[(l, j)] = s;
            }
        }
        ric
    }

    pub fn scalar(&self) -> f64 {
        self.ricci().trace()
    }

    /// Totally trace-free part in the decomposition
    /// `R = W + (1/(n-2)) h ⊙ g + scal/(2n(n-1)) g ⊙ g`, with `h` the traceless Ricci tensor.
    pub fn weyl(&self) -> Self {
        let n = self.n;
        let nf = n as f64;
        let ric = self.ricci();
        let scal = ric.trace();
        let g = DMatrix::<f64>::identity(n, n);
        let traceless = &ric - &g * (scal / nf);
        let kn_h = kulkarni_nomizu(&traceless, &g);
        let kn_g = kulkarni_nomizu(&g, &g);
        let m = &self.m - kn_h.m * (1.0 / (nf - 2.0)) - kn_g.m * (scal / (2.0 * nf * (nf - 1.0)));
        Self::from_raw(n, m)
    }

    /// Frobenius norm of the full rank-4 table.
    pub fn norm(&self) -> f64 {
        2.0 * self.m.norm()
    }

    /// Frobenius inner product of the full rank-4 tables.
    pub fn inner(&self, other: &Self) -> f64 {
        4.0 * self.m.dot(&other.m)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            m: &self.m * c,
        }
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.m)
    }

    /// Largest first-Bianchi defect `|R_{ijkl} + R_{jkil} + R_{kijl}|` (absolute).
    pub fn bianchi_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for_each_quadruple(self.n, |i, j, k, l| {
            let c = self.component(i, j, k, l)
                + self.component(j, k, i, l)
                + self.component(k, i, j, l);
            worst = worst.max(c.abs());
        });
        worst
    }

    pub fn ensure_same_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(CurvError::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }
}

fn for_each_quadruple(n: usize, mut f: impl FnMut(usize, usize, usize, usize)) {
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    f(i, j, k, l);
                }
            }
        }
    }
}

/// `(h ⊙ k)_{ijkl} = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il` for symmetric `h`, `k`.
pub fn kulkarni_nomizu(h: &DMatrix<f64>, k: &DMatrix<f64>) -> CurvatureTensor {
    let n = h.nrows();
    let pairs = pair_list(n);
    let np = pairs.len();
    let mut m = DMatrix::zeros(np, np);
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(p, q)) in pairs.iter().enumerate().skip(a) {
            let v = h[(i, p)] * k[(j, q)] + h[(j, q)] * k[(i, p)]
                - h[(i, q)] * k[(j, p)]
                - h[(j, p)] * k[(i, q)];
            m[(a, b)] = v;
            m[(b, a)] = v;
        }
    }
    CurvatureTensor::from_raw(n, m)
}

/// Removes the Λ⁴ (totally antisymmetric) component of a pair matrix, i.e.
/// subtracts `b(R) = (R(X,Y,Z,W) + R(Y,Z,X,W) + R(Z,X,Y,W)) / 3`.
pub(crate) fn bianchi_project(n: usize, m: &mut DMatrix<f64>) {
    let get = |m: &DMatrix<f64>, i: usize, j: usize, k: usize, l: usize| -> f64 {
        match (signed_pair(n, i, j), signed_pair(n, k, l)) {
            (Some((a, sa)), Some((b, sb))) => sa * sb * m[(a, b)],
            _ => 0.0,
        }
    };
    let mut corrections = Vec::new();
    for_each_quadruple(n, |i, j, k, l| {
        let alt = (get(m, i, j, k, l) + get(m, j, k, i, l) + get(m, k, i, j, l)) / 3.0;
        if alt != 0.0 {
            corrections.push((i, j, k, l, alt));
        }
    });
    for (i, j, k, l, alt) in corrections {
        let ij = pair_index(n, i, j);
        let kl = pair_index(n, k, l);
        let ik = pair_index(n, i, k);
        let jl = pair_index(n, j, l);
        let il = pair_index(n, i, l);
        let jk = pair_index(n, j, k);
        for (a, b, s) in [(ij, kl, 1.0), (ik, jl, -1.0), (il, jk, 1.0)] {
            m[(a, b)] -= s * alt;
            m[(b, a)] -= s * alt;
        }
    }
}

/// Orthogonal projection of an arbitrary `n⁴` table onto the algebraic curvature tensors.
///
/// Averages over the eight index symmetries generated by the two antisymmetries
/// and pair exchange, then removes the totally antisymmetric part. Idempotent,
/// and the identity on valid curvature tensors.
pub fn project_to_curvature(n: usize, table: &[f64]) -> Result<CurvatureTensor> {
    check_dim(n)?;
    if table.len() != n * n * n * n {
        return Err(CurvError::DimensionMismatch {
            expected: n * n * n * n,
            found: table.len(),
        });
    }
    if table.iter().any(|v| !v.is_finite()) {
        return Err(CurvError::NonFinite);
    }
    let t = |i: usize, j: usize, k: usize, l: usize| table[((i * n + j) * n + k) * n + l];
    let pairs = pair_list(n);
    let np = pairs.len();
    let mut m = DMatrix::zeros(np, np);
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            m[(a, b)] =
                (t(i, j, k, l) - t(j, i, k, l) - t(i, j, l, k) + t(j, i, l, k) + t(k, l, i, j)
                    - t(l, k, i, j)
                    - t(k, l, j, i)
                    + t(l, k, j, i))
                    / 8.0;
        }
    }
    bianchi_project(n, &mut m);
    Ok(CurvatureTensor::from_raw(n, m))
}

/// Re-imposes the curvature symmetries on an existing tensor (drift control).
pub fn reproject(r: &CurvatureTensor) -> CurvatureTensor {
    let mut m = (&r.m + r.m.transpose()) * 0.5;
    bianchi_project(r.n, &mut m);
    CurvatureTensor { n: r.n, m }
}

impl Add for &CurvatureTensor {
    type Output = CurvatureTensor;
    fn add(self, rhs: Self) -> CurvatureTensor {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CurvatureTensor {
            n: self.n,
            m: &self.m + &rhs.m,
        }
    }
}

impl Sub for &CurvatureTensor {
    type Output = CurvatureTensor;
    fn sub(self, rhs: Self) -> CurvatureTensor {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CurvatureTensor {
            n: self.n,
            m: &self.m - &rhs.m,
        }
    }
}

impl Mul<f64> for &CurvatureTensor {
    type Output = CurvatureTensor;
    fn mul(self, c: f64) -> CurvatureTensor {
        self.scaled(c)
    }
}

impl Neg for &CurvatureTensor {
    type Output = CurvatureTensor;
    fn neg(self) -> CurvatureTensor {
        self.scaled(-1.0)
    }
}

impl Add for CurvatureTensor {
    type Output = CurvatureTensor;
    fn add(self, rhs: Self) -> CurvatureTensor {
        &self + &rhs
    }
}

impl Sub for CurvatureTensor {
    type Output = CurvatureTensor;
    fn sub(self, rhs: Self) -> CurvatureTensor {
        &self - &rhs
    }
}

impl Mul<f64> for CurvatureTensor {
    type Output = CurvatureTensor;
    fn mul(self, c: f64) -> CurvatureTensor {
        self.scaled(c)
    }
}
