//! Balanced 2x2-block CS decomposition of a unitary matrix.
//!
//! A 2n-by-2n unitary W partitioned into n-by-n blocks factors as
//!
//! ```text
//!     W = | U1  0 | |  C  S | | V1  0 |
//!         | 0  U2 | | -S  C | | 0  V2 |
//! ```
//!
//! with U1, U2, V1, V2 unitary and C, S non-negative diagonal satisfying
//! C² + S² = I. The cosines are the singular values of the top-left block,
//! kept non-increasing; the sines are then non-decreasing.
//!
//! The construction SVDs the top-left block, re-gauges the left factor inside
//! each cluster of (nearly) equal cosines through a secondary SVD of the
//! matching rows of U1*·W12 so those rows come out exactly diagonal-times-
//! unitary, and finally derives U2 column-wise from whichever of the two lower
//! blocks carries the stronger signal. No step divides by a small cosine or
//! sine: columns switch source at the c = s balance point, so every divisor is
//! at least 1/√2.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{unitarity_defect, MAX_SVD_ITERS};
use crate::mat::{block2x2, block_diag, ensure_finite, ensure_shape, polar_unitary, real_diag, zeros, CMat};

/// Cosines regarded as equal when they differ by at most this (they live in
/// [0,1], so relative and absolute agree).
const CLUSTER_TOL: f64 = 1e-8;

/// Sines at or below this are treated as exactly zero; the matching rows of V2
/// are pure gauge and get filled by orthonormal completion.
const FREE_ROW_CUT: f64 = 1e-12;

/// Reconstruction bound, relative to `‖w‖_F`.
const RESIDUAL_BOUND: f64 = 1e-10;

/// Factors of the balanced 2x2-block CS decomposition.
#[derive(Debug, Clone)]
pub struct CsDecomposition {
    pub u1: CMat,
    pub u2: CMat,
    pub v1: CMat,
    pub v2: CMat,
    /// Non-increasing, in [0, 1].
    pub cosines: Vec<f64>,
    /// Non-decreasing, in [0, 1]; `cosines[j]² + sines[j]² = 1`.
    pub sines: Vec<f64>,
}

impl CsDecomposition {
    /// Assembles `diag(u1,u2) · [[C,S],[-S,C]] · diag(v1,v2)`.
    pub fn reconstruct(&self) -> CMat {
        let cm = real_diag(&self.cosines);
        let sm = real_diag(&self.sines);
        let core = block2x2(&cm, &sm, &(-&sm), &cm);
        block_diag(&[&self.u1, &self.u2]) * core * block_diag(&[&self.v1, &self.v2])
    }
}

/// CS decomposition of a 2n-by-2n unitary (within `tol`) matrix.
pub fn cs_decompose(w: &CMat, n: usize, tol: f64) -> Result<CsDecomposition> {
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    ensure_finite(w)?;
    ensure_shape(w, 2 * n, 2 * n)?;
    let defect = unitarity_defect(w)?;
    if defect > tol {
        return Err(Error::NotUnitary { defect });
    }

    let w11 = w.view((0, 0), (n, n)).into_owned();
    let w12 = w.view((0, n), (n, n)).into_owned();
    let w21 = w.view((n, 0), (n, n)).into_owned();
    let w22 = w.view((n, n), (n, n)).into_owned();

    // W11 = u1 · diag(c) · v1, cosines non-increasing.
    let f = w11
        .clone()
        .try_svd(true, true, f64::EPSILON, MAX_SVD_ITERS)
        .ok_or(Error::SvdNoConvergence)?;
    let mut u1 = f.u.unwrap();
    let mut v1 = f.v_t.unwrap();
    let cosines: Vec<f64> = f.singular_values.iter().map(|&s| s.clamp(0.0, 1.0)).collect();

    // Should equal diag(s) · v2 once the gauge is fixed.
    let mut t = u1.adjoint() * &w12;

    let mut sines = vec![0.0_f64; n];
    let mut v2_rows: Vec<Option<CMat>> = vec![None; n];

    // Per cluster of equal cosines: secondary SVD of the matching rows of T,
    // absorbed into u1/v1. Single-index clusters get the same treatment (the
    // 1x1 left factor is just a phase).
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && cosines[end - 1] - cosines[end] <= CLUSTER_TOL {
            end += 1;
        }
        let k = end - start;
        let rows = t.view((start, 0), (k, n)).into_owned();
        let sub = rows
            .try_svd(true, true, f64::EPSILON, MAX_SVD_ITERS)
            .ok_or(Error::SvdNoConvergence)?;
        let p = sub.u.unwrap();
        let q = sub.v_t.unwrap();
        // Reverse so the sines come out ascending inside the cluster, matching
        // the descending cosines they pair with.
        for (local, j) in (start..end).enumerate().map(|(l, j)| (k - 1 - l, j)) {
            let sigma = sub.singular_values[local].clamp(0.0, 1.0);
            sines[j] = sigma;
            if sigma > FREE_ROW_CUT {
                v2_rows[j] = Some(q.row(local).into_owned());
            }
        }
        // u1[:, J] <- u1[:, J] · P·rev, v1[J, :] <- (P·rev)* · v1[J, :], which
        // leaves u1·diag(c)·v1 unchanged up to the cluster width.
        let mut p_rev = zeros(k, k);
        for col in 0..k {
            p_rev.set_column(col, &p.column(k - 1 - col));
        }
        let u1_block = u1.view((0, start), (n, k)) * &p_rev;
        u1.view_mut((0, start), (n, k)).copy_from(&u1_block);
        let v1_block = p_rev.adjoint() * v1.view((start, 0), (k, n));
        v1.view_mut((start, 0), (k, n)).copy_from(&v1_block);
        let t_block = p_rev.adjoint() * t.view((start, 0), (k, n));
        t.view_mut((start, 0), (k, n)).copy_from(&t_block);

        start = end;
    }

    // Keep the global pairing monotone; only epsilon-level inversions can
    // appear at cluster boundaries.
    for j in 1..n {
        if sines[j] < sines[j - 1] {
            sines[j] = sines[j - 1];
        }
    }

    // Fill the gauge rows of v2 by orthonormal completion, then polish.
    let v2 = complete_rows(v2_rows, n)?;
    let v2 = polar_unitary(&v2)?;

    // u2 column-wise from the stronger block: W21·v1* = -u2·S and
    // W22·v2* = u2·C; the divisor is always at least 1/sqrt(2).
    let y = &w21 * v1.adjoint();
    let g = &w22 * v2.adjoint();
    let mut u2 = zeros(n, n);
    for j in 0..n {
        if sines[j] > cosines[j] {
            u2.set_column(j, &(y.column(j) * crate::mat::cr(-1.0 / sines[j])));
        } else {
            u2.set_column(j, &(g.column(j) * crate::mat::cr(1.0 / cosines[j])));
        }
    }
    let u2 = polar_unitary(&u2)?;

    let cs = CsDecomposition {
        u1,
        u2,
        v1,
        v2,
        cosines,
        sines,
    };
    let residual = (cs.reconstruct() - w).norm();
    if residual > RESIDUAL_BOUND * w.norm() {
        return Err(Error::DegenerateClusterFailure { residual });
    }
    Ok(cs)
}

/// Stacks the determined rows and fills every `None` slot with a canonical
/// basis vector orthonormalized against everything placed so far.
fn complete_rows(rows: Vec<Option<CMat>>, n: usize) -> Result<CMat> {
    let mut out = zeros(n, n);
    let mut filled: Vec<usize> = Vec::new();
    for (j, row) in rows.iter().enumerate() {
        if let Some(r) = row {
            out.view_mut((j, 0), (1, n)).copy_from(r);
            filled.push(j);
        }
    }
    for j in 0..n {
        if rows[j].is_some() {
            continue;
        }
        let mut best: Option<CMat> = None;
        let mut best_norm = 0.0;
        for cand in 0..n {
            let mut v = zeros(1, n);
            v[(0, cand)] = crate::mat::cr(1.0);
            // Two Gram-Schmidt passes against the rows already in place.
            for _ in 0..2 {
                for &i in &filled {
                    let r = out.view((i, 0), (1, n));
                    let coeff = (&v * r.adjoint())[(0, 0)];
                    v -= r.into_owned() * coeff;
                }
            }
            let norm = v.norm();
            if norm > best_norm {
                best_norm = norm;
                best = Some(v);
            }
            if best_norm > 0.7 {
                break;
            }
        }
        let v = best.ok_or(Error::DegenerateClusterFailure { residual: f64::NAN })?;
        if best_norm < 1e-6 {
            return Err(Error::DegenerateClusterFailure { residual: best_norm });
        }
        let v = v * crate::mat::cr(1.0 / best_norm);
        out.view_mut((j, 0), (1, n)).copy_from(&v);
        filled.push(j);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_unitary;
    use crate::mat::{c, cr, eye};

    fn check_invariants(w: &CMat, n: usize, cs: &CsDecomposition) {
        for f in [&cs.u1, &cs.u2, &cs.v1, &cs.v2] {
            assert!(is_unitary(f, 1e-10).unwrap());
        }
        for j in 0..n {
            let one = cs.cosines[j] * cs.cosines[j] + cs.sines[j] * cs.sines[j];
            assert!((one - 1.0).abs() <= 1e-12, "c^2+s^2 off: {one}");
            if j > 0 {
                assert!(cs.cosines[j] <= cs.cosines[j - 1]);
                assert!(cs.sines[j] >= cs.sines[j - 1]);
            }
        }
        let resid = (cs.reconstruct() - w).norm();
        assert!(resid <= 1e-10 * w.norm(), "residual {resid:e}");
    }

    #[test]
    fn identity_blocks() {
        for n in [1usize, 2, 4] {
            let w = eye(2 * n);
            let cs = cs_decompose(&w, n, 1e-12).unwrap();
            assert!(cs.cosines.iter().all(|&x| (x - 1.0).abs() <= 1e-14));
            assert!(cs.sines.iter().all(|&x| x <= 1e-14));
            check_invariants(&w, n, &cs);
        }
    }

    #[test]
    fn antidiagonal_blocks() {
        // [[0, I],[I, 0]]: all cosines 0, all sines 1 with the sign absorbed
        // into the block factors.
        for n in [1usize, 3] {
            let w = block2x2(&zeros(n, n), &eye(n), &eye(n), &zeros(n, n));
            let cs = cs_decompose(&w, n, 1e-12).unwrap();
            assert!(cs.cosines.iter().all(|&x| x <= 1e-14));
            assert!(cs.sines.iter().all(|&x| (x - 1.0).abs() <= 1e-14));
            check_invariants(&w, n, &cs);
        }
    }

    #[test]
    fn seeded_random_unitary() {
        let w = crate::generator::random_unitary(4, 20240811);
        let cs = cs_decompose(&w, 2, 1e-10).unwrap();
        check_invariants(&w, 2, &cs);
    }

    #[test]
    fn repeated_cosines() {
        // Engineered ties, including cosine 1 (free v2 rows) and cosine 0.
        let cases: &[&[f64]] = &[
            &[0.8, 0.8],
            &[1.0, 1.0, 0.5],
            &[1.0, 0.6, 0.6],
            &[0.5, 0.5, 0.5],
            &[1.0, 1.0, 0.0],
        ];
        for (k, cos) in cases.iter().enumerate() {
            let n = cos.len();
            let sin: Vec<f64> = cos.iter().map(|&x| libm::sqrt(1.0 - x * x)).collect();
            let mut seed = 900 + k as u64;
            let u1 = crate::generator::random_unitary(n, seed);
            seed += 1;
            let u2 = crate::generator::random_unitary(n, seed);
            seed += 1;
            let v1 = crate::generator::random_unitary(n, seed);
            seed += 1;
            let v2 = crate::generator::random_unitary(n, seed);
            let built = CsDecomposition {
                u1,
                u2,
                v1,
                v2,
                cosines: cos.to_vec(),
                sines: sin,
            };
            let w = built.reconstruct();
            let cs = cs_decompose(&w, n, 1e-10).unwrap();
            check_invariants(&w, n, &cs);
            let mut expect = cos.to_vec();
            expect.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for j in 0..n {
                assert!((cs.cosines[j] - expect[j]).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn rejects_non_unitary() {
        let w = eye(4) * cr(2.0);
        assert!(matches!(cs_decompose(&w, 2, 1e-10), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn cs_of_reconstruction_is_idempotent_on_angles() {
        let w = crate::generator::random_unitary(6, 77);
        let cs = cs_decompose(&w, 3, 1e-10).unwrap();
        let again = cs_decompose(&cs.reconstruct(), 3, 1e-9).unwrap();
        for j in 0..3 {
            assert!((cs.cosines[j] - again.cosines[j]).abs() <= 1e-10);
            assert!((cs.sines[j] - again.sines[j]).abs() <= 1e-10);
        }
    }

    #[test]
    fn complex_entries_roundtrip() {
        // A specific unitary with complex phases in every block.
        let n = 2;
        let th = 0.3_f64;
        let (cth, sth) = (libm::cos(th), libm::sin(th));
        let phase = c(libm::cos(1.1), libm::sin(1.1));
        let u1 = CMat::from_row_slice(2, 2, &[phase * cr(cth), phase * cr(-sth), cr(sth), cr(cth)]);
        let built = CsDecomposition {
            u1,
            u2: eye(n),
            v1: eye(n),
            v2: eye(n) * c(0.0, 1.0),
            cosines: alloc::vec![0.9, 0.2],
            sines: alloc::vec![libm::sqrt(1.0 - 0.81), libm::sqrt(1.0 - 0.04)],
        };
        let w = built.reconstruct();
        let cs = cs_decompose(&w, n, 1e-10).unwrap();
        check_invariants(&w, n, &cs);
        assert!((cs.cosines[0] - 0.9).abs() <= 1e-12);
        assert!((cs.cosines[1] - 0.2).abs() <= 1e-12);
    }
}
