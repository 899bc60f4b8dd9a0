//! The symmetric bilinear pairing `B(R, S)` and its diagonal `Q(R) = B(R, R)`.
//!
//! In an orthonormal basis,
//!
//! ```text
//! B(R,S)(X,Y,Z,W) = ½ Σ_{p,q} [R(X,Y,p,q) S(Z,W,p,q) + R(Z,W,p,q) S(X,Y,p,q)]
//!                 +   Σ_{p,q} [R(X,p,Z,q) S(Y,p,W,q) + R(Y,p,W,q) S(X,p,Z,q)]
//!                 -   Σ_{p,q} [R(X,p,W,q) S(Y,p,Z,q) + R(Y,p,Z,q) S(X,p,W,q)]
//! ```
//!
//! The first block is `M_R M_S + M_S M_R` on pair matrices (each unordered pair
//! `{p,q}` appears twice in the ordered sum). The other two blocks are entries of
//! `C = U_R U_Sᵀ` with `U_R[(a,b),(p,q)] = R(a,p,b,q)`, an `n² × n²` product.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::pairs::pair_list;
use crate::tensor::CurvatureTensor;

fn cross_matrix(r: &CurvatureTensor) -> DMatrix<f64> {
    let n = r.dim();
    let nn = n * n;
    let mut u = DMatrix::zeros(nn, nn);
    for a in 0..n {
        for b in 0..n {
            for p in 0..n {
                for q in 0..n {
                    u[(a * n + b, p * n + q)] = r.component(a, p, b, q);
                }
            }
        }
    }
    u
}

pub fn bform(r: &CurvatureTensor, s: &CurvatureTensor) -> Result<CurvatureTensor> {
    r.ensure_same_dim(s)?;
    let n = r.dim();
    let (mr, ms) = (r.pair_matrix(), s.pair_matrix());
    let mut out = mr * ms + ms * mr;

    let ur = cross_matrix(r);
    let us = if std::ptr::eq(r, s) {
        ur.clone()
    } else {
        cross_matrix(s)
    };
    let c = &ur * us.transpose();
    let cc = |a: usize, b: usize, x: usize, y: usize| c[(a * n + b, x * n + y)];

    let pairs = pair_list(n);
    for (ia, &(x, y)) in pairs.iter().enumerate() {
        for (ib, &(z, w)) in pairs.iter().enumerate().skip(ia) {
            let v = cc(x, z, y, w) + cc(y, w, x, z) - cc(x, w, y, z) - cc(y, z, x, w);
            out[(ia, ib)] += v;
            if ia != ib {
                out[(ib, ia)] += v;
            }
        }
    }
    Ok(CurvatureTensor::from_raw(n, out))
}

pub fn qform(r: &CurvatureTensor) -> CurvatureTensor {
    bform(r, r).expect("same tensor has matching dimension")
}

/// Frobenius norm of `Q(R) - 2ρR`; zero exactly when `R` is a fixed point of the
/// reaction term at Einstein constant `ρ`.
pub fn einstein_residual(r: &CurvatureTensor, rho: f64) -> f64 {
    (&qform(r) - &r.scaled(2.0 * rho)).norm()
}
