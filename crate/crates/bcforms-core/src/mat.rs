//! Dense complex matrix carrier and block-assembly helpers.
//!
//! Every matrix in this crate is a heap-allocated `DMatrix<Complex64>`; the
//! alias [`CMat`] is used throughout. Helpers here cover the block layouts the
//! canonical-form algebra keeps reassembling (2x2 and 1x4 block rows, block
//! diagonals, real diagonals) plus finiteness/shape validation.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex double-precision matrix.
pub type CMat = DMatrix<Complex64>;

/// Complex literal shorthand.
#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Real number as a complex entry.
#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// n-by-n identity.
pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Zero matrix.
pub fn zeros(rows: usize, cols: usize) -> CMat {
    CMat::zeros(rows, cols)
}

/// Diagonal matrix from real entries.
pub fn real_diag(d: &[f64]) -> CMat {
    CMat::from_fn(d.len(), d.len(), |i, j| if i == j { cr(d[i]) } else { cr(0.0) })
}

pub fn is_finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn ensure_finite(m: &CMat) -> Result<()> {
    if is_finite(m) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Returns the side length, or `NotSquare`.
pub fn ensure_square(m: &CMat) -> Result<usize> {
    if m.nrows() == m.ncols() {
        Ok(m.nrows())
    } else {
        Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        })
    }
}

pub fn ensure_shape(m: &CMat, rows: usize, cols: usize) -> Result<()> {
    if m.nrows() == rows && m.ncols() == cols {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: (rows, cols),
            found: (m.nrows(), m.ncols()),
        })
    }
}

/// Horizontal concatenation of blocks with equal row counts.
pub fn hcat(blocks: &[&CMat]) -> CMat {
    let rows = blocks[0].nrows();
    debug_assert!(blocks.iter().all(|b| b.nrows() == rows));
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = zeros(rows, cols);
    let mut c0 = 0;
    for b in blocks {
        out.view_mut((0, c0), (rows, b.ncols())).copy_from(*b);
        c0 += b.ncols();
    }
    out
}

/// Vertical concatenation of blocks with equal column counts.
pub fn vcat(blocks: &[&CMat]) -> CMat {
    let cols = blocks[0].ncols();
    debug_assert!(blocks.iter().all(|b| b.ncols() == cols));
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = zeros(rows, cols);
    let mut r0 = 0;
    for b in blocks {
        out.view_mut((r0, 0), (b.nrows(), cols)).copy_from(*b);
        r0 += b.nrows();
    }
    out
}

/// Block-diagonal assembly.
pub fn block_diag(blocks: &[&CMat]) -> CMat {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        out.view_mut((r0, c0), (b.nrows(), b.ncols())).copy_from(*b);
        r0 += b.nrows();
        c0 += b.ncols();
    }
    out
}

/// 2x2 block assembly from equally sized square blocks.
pub fn block2x2(a: &CMat, b: &CMat, c: &CMat, d: &CMat) -> CMat {
    vcat(&[&hcat(&[a, b]), &hcat(&[c, d])])
}

/// Signed antidiagonal matrix `(-1)^r δ_{r, m+1-s}` (1-based indices) of size m.
///
/// For even m this is the symplectic matrix with square −I; for any m it is a
/// real signed permutation, hence unitary.
pub fn signed_antidiagonal(m: usize) -> CMat {
    CMat::from_fn(m, m, |i, j| {
        // 1-based: r = i+1, s = j+1, nonzero at s = m+1-r, value (-1)^r.
        if j == m - 1 - i {
            cr(if (i + 1) % 2 == 0 { 1.0 } else { -1.0 })
        } else {
            cr(0.0)
        }
    })
}

/// Nearest unitary in the polar sense, computed from the SVD.
pub(crate) fn polar_unitary(m: &CMat) -> Result<CMat> {
    let svd = m
        .clone()
        .try_svd(true, true, f64::EPSILON, crate::linalg::MAX_SVD_ITERS)
        .ok_or(Error::SvdNoConvergence)?;
    Ok(svd.u.unwrap() * svd.v_t.unwrap())
}

/// Singular values of `m`, sorted non-increasing.
pub(crate) fn singular_values(m: &CMat) -> Result<Vec<f64>> {
    let svd = m
        .clone()
        .try_svd(false, false, f64::EPSILON, crate::linalg::MAX_SVD_ITERS)
        .ok_or(Error::SvdNoConvergence)?;
    Ok(svd.singular_values.iter().copied().collect())
}
