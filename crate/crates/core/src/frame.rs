use nalgebra::{DMatrix, DVector};

use crate::error::{CurvError, Result};
use crate::tolerance;

/// Ordered orthonormal four-frame `(e₁, e₂, e₃, e₄)` in ℝⁿ, stored as the columns
/// of an `n × 4` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FourFrame {
    cols: DMatrix<f64>,
}

/// `max |FᵀF - I|`.
pub fn gram_defect(f: &DMatrix<f64>) -> f64 {
    let k = f.ncols();
    (f.transpose() * f - DMatrix::<f64>::identity(k, k))
        .abs()
        .max()
}

impl FourFrame {
    pub fn new(
        e1: DVector<f64>,
        e2: DVector<f64>,
        e3: DVector<f64>,
        e4: DVector<f64>,
    ) -> Result<Self> {
        let n = e1.len();
        for v in [&e2, &e3, &e4] {
            if v.len() != n {
                return Err(CurvError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        Self::from_matrix(DMatrix::from_columns(&[e1, e2, e3, e4]))
    }

    pub fn from_matrix(cols: DMatrix<f64>) -> Result<Self> {
        Self::from_matrix_with_tol(cols, tolerance::FRAME)
    }

    pub fn from_matrix_with_tol(cols: DMatrix<f64>, tol: f64) -> Result<Self> {
        if cols.ncols() != 4 {
            return Err(CurvError::DimensionMismatch {
                expected: 4,
                found: cols.ncols(),
            });
        }
        if cols.iter().any(|v| !v.is_finite()) {
            return Err(CurvError::NonFinite);
        }
        let defect = gram_defect(&cols);
        if defect > tol {
            return Err(CurvError::NotOrthonormal { defect });
        }
        Ok(Self { cols })
    }

    /// Coordinate frame `(e_a, e_b, e_c, e_d)`.
    pub fn coordinate(n: usize, idx: [usize; 4]) -> Result<Self> {
        let mut cols = DMatrix::zeros(n, 4);
        for (c, &i) in idx.iter().enumerate() {
            if i >= n {
                return Err(CurvError::DimensionMismatch {
                    expected: n,
                    found: i + 1,
                });
            }
            cols[(i, c)] = 1.0;
        }
        Self::from_matrix(cols)
    }

    pub fn dim(&self) -> usize {
        self.cols.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.cols
    }

    pub fn vector(&self, i: usize) -> DVector<f64> {
        self.cols.column(i).into_owned()
    }

    pub fn vectors(&self) -> [DVector<f64>; 4] {
        [
            self.vector(0),
            self.vector(1),
            self.vector(2),
            self.vector(3),
        ]
    }
}
