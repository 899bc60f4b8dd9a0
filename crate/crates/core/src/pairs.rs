//! Index bookkeeping for the lexicographic basis `{e_i ∧ e_j : i < j}` of Λ²ℝⁿ.

use nalgebra::{DMatrix, DVector};

/// Number of 2-form basis elements, `n(n-1)/2`.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Position of `e_i ∧ e_j` (requires `i < j < n`) in lex order (0,1),(0,2),…,(n-2,n-1).
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Signed lookup: returns `(index, sign)` for an ordered pair, or `None` on the diagonal.
#[inline]
pub fn signed_pair(n: usize, i: usize, j: usize) -> Option<(usize, f64)> {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Less => Some((pair_index(n, i, j), 1.0)),
        Greater => Some((pair_index(n, j, i), -1.0)),
        Equal => None,
    }
}

/// All pairs in storage order.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Coordinates of `x ∧ y`: `(x∧y)_{ij} = x_i y_j - x_j y_i`.
pub fn wedge(x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
    let n = x.len();
    let mut out = DVector::zeros(pair_count(n));
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            out[idx] = x[i] * y[j] - x[j] * y[i];
            idx += 1;
        }
    }
    out
}

/// Antisymmetric n×n matrix `A` with `A_{ij} = w_{ij}` for `i < j`.
pub fn antisym_from_pairs(n: usize, w: &DVector<f64>) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(n, n);
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            a[(i, j)] = w[idx];
            a[(j, i)] = -w[idx];
            idx += 1;
        }
    }
    a
}

/// Matrix of the induced action `ω ↦ ω(A·, A·)` on Λ² in pair coordinates.
///
/// Column `(c,d)` holds the coordinates of `A e_c ∧ A e_d`, so for a curvature
/// matrix `M` the product `M · L` represents `R(X, Y, A Z, A W)`.
pub fn induced_pair_action(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let np = pair_count(n);
    let mut out = DMatrix::zeros(np, np);
    for (col, (c, d)) in pair_list(n).into_iter().enumerate() {
        let ac = a.column(c).into_owned();
        let ad = a.column(d).into_owned();
        out.set_column(col, &wedge(&ac, &ad));
    }
    out
}
