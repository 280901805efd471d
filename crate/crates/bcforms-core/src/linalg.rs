//! Complex SVD, tolerance-based rank, and unitarity/Hermiticity predicates.
//!
//! All predicates take an explicit tolerance; the crate-wide default is
//! [`DEFAULT_TOL`], interpreted relative to the largest singular value where a
//! scale is needed.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mat::{ensure_finite, ensure_square, eye, real_diag, CMat};

/// Library default tolerance for rank/zero decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Iteration cap for the implicit-shift SVD kernel.
pub(crate) const MAX_SVD_ITERS: usize = 100_000;

/// Singular value decomposition `m = left · diag(singular_values) · right*`.
///
/// For an r-by-c input the factors are thin: `left` is r-by-k and `right` is
/// c-by-k with k = min(r, c); for square inputs both factors are unitary.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub left: CMat,
    /// Non-negative, sorted non-increasing.
    pub singular_values: Vec<f64>,
    pub right: CMat,
}

impl SvdResult {
    /// `left · diag(singular_values) · right*`.
    pub fn reconstruct(&self) -> CMat {
        &self.left * real_diag(&self.singular_values) * self.right.adjoint()
    }
}

/// Complex SVD with singular values sorted non-increasing.
pub fn svd(m: &CMat) -> Result<SvdResult> {
    ensure_finite(m)?;
    let f = m
        .clone()
        .try_svd(true, true, f64::EPSILON, MAX_SVD_ITERS)
        .ok_or(Error::SvdNoConvergence)?;
    Ok(SvdResult {
        left: f.u.unwrap(),
        singular_values: f.singular_values.iter().copied().collect(),
        right: f.v_t.unwrap().adjoint(),
    })
}

/// Number of singular values above `tol · max(1, σ_max)`.
pub fn rank_with_tol(m: &CMat, tol: f64) -> Result<usize> {
    assert!(tol > 0.0, "rank tolerance must be positive");
    ensure_finite(m)?;
    let sv = crate::mat::singular_values(m)?;
    let largest = sv.first().copied().unwrap_or(0.0);
    let cut = tol * largest.max(1.0);
    Ok(sv.iter().filter(|&&s| s > cut).count())
}

/// True iff `‖m·m* − I‖_F ≤ tol`.
pub fn is_unitary(m: &CMat, tol: f64) -> Result<bool> {
    Ok(unitarity_defect(m)? <= tol)
}

/// True iff `‖m − m*‖_F ≤ tol`.
pub fn is_hermitian(m: &CMat, tol: f64) -> Result<bool> {
    ensure_square(m)?;
    Ok((m - m.adjoint()).norm() <= tol)
}

/// `‖m·m* − I‖_F` for square m.
pub fn unitarity_defect(m: &CMat) -> Result<f64> {
    let n = ensure_square(m)?;
    Ok((m * m.adjoint() - eye(n)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{c, cr, signed_antidiagonal, zeros};

    #[test]
    fn svd_identity_and_zero() {
        let r = svd(&eye(3)).unwrap();
        assert_eq!(r.singular_values, alloc::vec![1.0, 1.0, 1.0]);
        let r = svd(&zeros(2, 2)).unwrap();
        assert_eq!(r.singular_values, alloc::vec![0.0, 0.0]);
    }

    #[test]
    fn svd_sorts_swapped_diagonal() {
        // diag(3,4) with rows swapped. Oracle: eigenvalues of m*m, which is
        // diag(9,16) by direct computation, so the singular values are 4, 3.
        let m = CMat::from_row_slice(2, 2, &[cr(0.0), cr(4.0), cr(3.0), cr(0.0)]);
        let g = m.adjoint() * &m;
        let (tr, det) = (g[(0, 0)].re + g[(1, 1)].re, (g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)]).re);
        let disc = libm::sqrt(tr * tr - 4.0 * det);
        let eigs = [(tr + disc) / 2.0, (tr - disc) / 2.0];
        assert!((libm::sqrt(eigs[0]) - 4.0).abs() < 1e-12);
        assert!((libm::sqrt(eigs[1]) - 3.0).abs() < 1e-12);

        let r = svd(&m).unwrap();
        assert!((r.singular_values[0] - 4.0).abs() < 1e-12);
        assert!((r.singular_values[1] - 3.0).abs() < 1e-12);
        assert!((r.reconstruct() - &m).norm() <= 1e-12 * (m.norm() + 1.0));
    }

    #[test]
    fn svd_rejects_non_finite() {
        let m = CMat::from_row_slice(1, 1, &[c(f64::NAN, 0.0)]);
        assert_eq!(svd(&m).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_with_tol(&eye(6), 1e-9).unwrap(), 6);
        assert_eq!(rank_with_tol(&zeros(4, 4), 1e-9).unwrap(), 0);
        let m = CMat::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(1e-12)]);
        assert_eq!(rank_with_tol(&m, 1e-9).unwrap(), 1);
    }

    #[test]
    fn unitary_examples() {
        assert!(is_unitary(&eye(4), 1e-12).unwrap());
        assert!(!is_unitary(&(eye(4) * cr(2.0)), 1e-12).unwrap());
        // C_3 is a real signed permutation, hence unitary.
        assert!(is_unitary(&signed_antidiagonal(3), 1e-12).unwrap());
        assert!(is_unitary(&zeros(2, 3), 1e-9).is_err());
    }

    #[test]
    fn hermitian_examples() {
        assert!(is_hermitian(&real_diag(&[1.0, -2.0, 0.5]), 1e-12).unwrap());
        let m = CMat::from_row_slice(2, 2, &[cr(0.0), c(0.0, 1.0), c(0.0, 1.0), cr(0.0)]);
        assert!(!is_hermitian(&m, 1e-12).unwrap());
        let m = CMat::from_row_slice(2, 2, &[cr(1.0), c(2.0, -1.0), c(2.0, 1.0), cr(0.0)]);
        assert!(is_hermitian(&m, 1e-12).unwrap());
    }
}
