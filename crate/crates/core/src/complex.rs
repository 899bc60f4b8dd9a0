//! Orthogonal complex structures and quaternion triples.
//!
//! Convention: `IJ = K`, hence `JI = -K`, `JK = I`, `KI = J` and `IJK = -id`.
//! `g(JX, Y)` is `Yᵀ J X`.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};

use crate::error::{CurvError, Result};
use crate::tolerance;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructure {
    j: DMatrix<f64>,
}

impl ComplexStructure {
    pub fn new(j: DMatrix<f64>) -> Result<Self> {
        let n = j.nrows();
        if j.ncols() != n {
            return Err(CurvError::DimensionMismatch {
                expected: n,
                found: j.ncols(),
            });
        }
        if !n.is_multiple_of(2) {
            return Err(CurvError::DimensionParity {
                n,
                requirement: "even",
            });
        }
        let id = DMatrix::<f64>::identity(n, n);
        let orth = (j.transpose() * &j - &id).abs().max();
        if orth > tolerance::FRAME {
            return Err(CurvError::InvalidComplexStructure {
                reason: "not orthogonal",
                defect: orth,
            });
        }
        let sq = (&j * &j + &id).abs().max();
        if sq > tolerance::FRAME {
            return Err(CurvError::InvalidComplexStructure {
                reason: "J∘J ≠ -id",
                defect: sq,
            });
        }
        Ok(Self { j })
    }

    /// Standard structure on ℝ^{2m}: `J e_{2k} = e_{2k+1}`, `J e_{2k+1} = -e_{2k}`.
    pub fn standard(n: usize) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(CurvError::DimensionParity {
                n,
                requirement: "even",
            });
        }
        let mut j = DMatrix::zeros(n, n);
        for k in 0..n / 2 {
            j[(2 * k + 1, 2 * k)] = 1.0;
            j[(2 * k, 2 * k + 1)] = -1.0;
        }
        Ok(Self { j })
    }

    pub fn dim(&self) -> usize {
        self.j.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.j
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.j * x
    }
}

/// Quaternion triple `(I, J, K)` on ℝ^{4m}.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionTriple {
    structures: [ComplexStructure; 3],
}

/// Left multiplication by i, j, k on ℍ = span(1, i, j, k), as columns.
fn left_mult_blocks() -> [[[f64; 4]; 4]; 3] {
    // Rows are images: entry [a][r][c] = coefficient of basis r in L_a(basis c).
    let mut out = [[[0.0; 4]; 4]; 3];
    // L_i: 1→i, i→-1, j→k, k→-j
    let li = [(0, 1, 1.0), (1, 0, -1.0), (2, 3, 1.0), (3, 2, -1.0)];
    // L_j: 1→j, i→-k, j→-1, k→i
    let lj = [(0, 2, 1.0), (1, 3, -1.0), (2, 0, -1.0), (3, 1, 1.0)];
    // L_k: 1→k, i→j, j→-i, k→-1
    let lk = [(0, 3, 1.0), (1, 2, 1.0), (2, 1, -1.0), (3, 0, -1.0)];
    for (a, table) in [li, lj, lk].iter().enumerate() {
        for &(src, dst, s) in table {
            out[a][dst][src] = s;
        }
    }
    out
}

impl QuaternionTriple {
    pub fn new(i: ComplexStructure, j: ComplexStructure, k: ComplexStructure) -> Result<Self> {
        let n = i.dim();
        for s in [&j, &k] {
            if s.dim() != n {
                return Err(CurvError::DimensionMismatch {
                    expected: n,
                    found: s.dim(),
                });
            }
        }
        if !n.is_multiple_of(4) {
            return Err(CurvError::DimensionParity {
                n,
                requirement: "a multiple of 4",
            });
        }
        let ij = i.matrix() * j.matrix();
        let d = (&ij - k.matrix()).abs().max();
        if d > tolerance::FRAME {
            return Err(CurvError::InvalidQuaternionTriple {
                reason: "IJ ≠ K",
                defect: d,
            });
        }
        let id = DMatrix::<f64>::identity(n, n);
        let d = (&ij * k.matrix() + &id).abs().max();
        if d > tolerance::FRAME {
            return Err(CurvError::InvalidQuaternionTriple {
                reason: "IJK ≠ -id",
                defect: d,
            });
        }
        Ok(Self {
            structures: [i, j, k],
        })
    }

    /// Standard triple on ℝ^{4m} = ℍ^m acting by left multiplication on each block.
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(4) {
            return Err(CurvError::DimensionParity {
                n,
                requirement: "a positive multiple of 4",
            });
        }
        let blocks = left_mult_blocks();
        let mats: Vec<DMatrix<f64>> = (0..3)
            .map(|a| {
                let mut m = DMatrix::zeros(n, n);
                for b in 0..n / 4 {
                    for r in 0..4 {
                        for c in 0..4 {
                            m[(4 * b + r, 4 * b + c)] = blocks[a][r][c];
                        }
                    }
                }
                m
            })
            .collect();
        let mut it = mats.into_iter().map(ComplexStructure::new);
        let i = it.next().unwrap()?;
        let j = it.next().unwrap()?;
        let k = it.next().unwrap()?;
        Self::new(i, j, k)
    }

    pub fn dim(&self) -> usize {
        self.structures[0].dim()
    }

    /// Quaternionic dimension `m` with `n = 4m`.
    pub fn m(&self) -> usize {
        self.dim() / 4
    }

    pub fn i(&self) -> &ComplexStructure {
        &self.structures[0]
    }

    pub fn j(&self) -> &ComplexStructure {
        &self.structures[1]
    }

    pub fn k(&self) -> &ComplexStructure {
        &self.structures[2]
    }

    pub fn structures(&self) -> &[ComplexStructure; 3] {
        &self.structures
    }

    /// The element `aI + bJ + cK` of the 2-sphere of structures (coefficients are normalized).
    pub fn member(&self, coeffs: Vector3<f64>) -> Result<ComplexStructure> {
        let norm = coeffs.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(CurvError::InvalidComplexStructure {
                reason: "zero coefficient vector",
                defect: norm,
            });
        }
        let u = coeffs / norm;
        let m = self.i().matrix() * u[0] + self.j().matrix() * u[1] + self.k().matrix() * u[2];
        ComplexStructure::new(m)
    }

    /// Triple `(I', J', K')` with `A'_a = Σ_b O_ab A_b` for a rotation `O ∈ SO(3)`.
    pub fn rotated(&self, rot: &Matrix3<f64>) -> Result<Self> {
        let det = rot.determinant();
        let orth = (rot.transpose() * rot - Matrix3::identity()).abs().max();
        if orth > tolerance::FRAME || (det - 1.0).abs() > tolerance::FRAME {
            return Err(CurvError::InvalidQuaternionTriple {
                reason: "rotation is not in SO(3)",
                defect: orth.max((det - 1.0).abs()),
            });
        }
        let combo = |a: usize| {
            self.i().matrix() * rot[(a, 0)]
                + self.j().matrix() * rot[(a, 1)]
                + self.k().matrix() * rot[(a, 2)]
        };
        Self::new(
            ComplexStructure::new(combo(0))?,
            ComplexStructure::new(combo(1))?,
            ComplexStructure::new(combo(2))?,
        )
    }
}

/// The 26-point design on S²: 6 axis points, 12 edge midpoints and 8 cube corners.
pub fn sphere_design_26() -> Vec<Vector3<f64>> {
    let mut pts = Vec::with_capacity(26);
    for a in 0..3 {
        for s in [1.0, -1.0] {
            let mut v = Vector3::zeros();
            v[a] = s;
            pts.push(v);
        }
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        for sa in [1.0, -1.0] {
            for sb in [1.0, -1.0] {
                let mut v = Vector3::zeros();
                v[a] = sa * h;
                v[b] = sb * h;
                pts.push(v);
            }
        }
    }
    let c = 1.0 / 3f64.sqrt();
    for sx in [1.0, -1.0] {
        for sy in [1.0, -1.0] {
            for sz in [1.0, -1.0] {
                pts.push(Vector3::new(sx * c, sy * c, sz * c));
            }
        }
    }
    pts
}
