//! Seeded generation of random unitaries and self-adjoint boundary pairs.
//!
//! The generator assembles pairs by running the canonical form backwards:
//! draw the four unitary factors, pick sines according to the requested
//! class, optionally scramble rows with a condition-bounded invertible
//! matrix, and reconstruct. Everything is driven by a ChaCha8 stream, so
//! output is deterministic per seed.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::boundary::{BcTag, BoundaryPair};
use crate::canonical::{reconstruct, CanonicalForm};
use crate::error::{Error, Result};
use crate::mat::{c, cr, eye, CMat};

/// Requested class of the generated pair.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassRequest {
    Class(BcTag),
    /// Exact sines to plant, each in [0, 1]; length must equal n.
    ExplicitSines(Vec<f64>),
}

/// Everything that determines one generated pair.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub class_request: ClassRequest,
    pub seed: u64,
    /// Left-multiply by a random invertible matrix (condition at most 1e6).
    pub scramble_rows: bool,
}

/// Condition-number ceiling for the row scrambler.
const MAX_CONDITION: f64 = 1e6;

/// Nonzero sines are drawn from [SINE_FLOOR, 1] so classification is robust
/// at the default tolerance.
const SINE_FLOOR: f64 = 0.1;

fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    // 53 random bits in [0, 1).
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard complex Gaussian via Box-Muller, both components N(0, 1).
fn gaussian(rng: &mut ChaCha8Rng) -> num_complex::Complex64 {
    let u1 = 1.0 - unit_f64(rng); // (0, 1]
    let u2 = unit_f64(rng);
    let r = libm::sqrt(-2.0 * libm::log(u1));
    let th = 2.0 * core::f64::consts::PI * u2;
    c(r * libm::cos(th), r * libm::sin(th))
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-style random unitary: QR of a complex Gaussian matrix with the
/// diagonal phases of R absorbed into Q.
pub fn random_unitary(n: usize, seed: u64) -> CMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_unitary_with(&mut rng, n)
}

pub(crate) fn random_unitary_with(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    let g = gaussian_matrix(rng, n, n);
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let phases = CMat::from_fn(n, n, |i, j| {
        if i == j {
            let d = r[(i, i)];
            let m = d.norm();
            if m > 0.0 {
                d / m
            } else {
                cr(1.0)
            }
        } else {
            cr(0.0)
        }
    });
    q * phases
}

/// Random invertible matrix with condition number at most `MAX_CONDITION`.
fn bounded_invertible(rng: &mut ChaCha8Rng, n: usize) -> Result<CMat> {
    for _ in 0..64 {
        let g = gaussian_matrix(rng, n, n);
        let sv = crate::mat::singular_values(&g)?;
        let (max, min) = (sv[0], sv[sv.len() - 1]);
        if min > 0.0 && max / min <= MAX_CONDITION {
            return Ok(g);
        }
    }
    // Overwhelmingly unlikely for the sizes in play.
    Err(Error::InvalidSpec("could not draw a well-conditioned scrambler".into()))
}

fn draw_sines(rng: &mut ChaCha8Rng, spec: &GenSpec) -> Result<Vec<f64>> {
    let n = spec.n;
    let mut sines = match &spec.class_request {
        ClassRequest::Class(BcTag::Separated) => vec![0.0; n],
        ClassRequest::Class(BcTag::Coupled) => (0..n)
            .map(|_| SINE_FLOOR + (1.0 - SINE_FLOOR) * unit_f64(rng))
            .collect(),
        ClassRequest::Class(BcTag::Mixed) => {
            if n < 2 {
                return Err(Error::InvalidSpec("mixed class needs n >= 2".into()));
            }
            // Coupling rank r uniform in 1..n: r nonzero sines, n-r zeros.
            let r = 1 + (rng.next_u64() % (n as u64 - 1)) as usize;
            let mut s = vec![0.0; n - r];
            s.extend((0..r).map(|_| SINE_FLOOR + (1.0 - SINE_FLOOR) * unit_f64(rng)));
            s
        }
        ClassRequest::ExplicitSines(values) => {
            if values.len() != n {
                return Err(Error::InvalidSpec("explicit sines must have length n".into()));
            }
            if values.iter().any(|&s| !(0.0..=1.0).contains(&s)) {
                return Err(Error::InvalidSpec("explicit sines must lie in [0, 1]".into()));
            }
            values.clone()
        }
    };
    sines.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(sines)
}

/// Generated pair together with the canonical form it was assembled from.
pub fn generate_with_form(spec: &GenSpec) -> Result<(BoundaryPair, CanonicalForm)> {
    if spec.n == 0 {
        return Err(Error::InvalidOrder);
    }
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let sines = draw_sines(&mut rng, spec)?;
    let cosines: Vec<f64> = sines.iter().map(|&s| libm::sqrt(1.0 - s * s)).collect();
    let u1 = random_unitary_with(&mut rng, n);
    let u2 = random_unitary_with(&mut rng, n);
    let v1 = random_unitary_with(&mut rng, n);
    let v2 = random_unitary_with(&mut rng, n);
    let u = if spec.scramble_rows {
        bounded_invertible(&mut rng, 2 * n)?
    } else {
        eye(2 * n)
    };
    let form = CanonicalForm {
        n,
        u,
        cosines,
        sines,
        u1,
        u2,
        v1,
        v2,
    };
    let pair = reconstruct(&form)?;
    Ok((pair, form))
}

/// Seeded self-adjoint pair of the requested order and class.
pub fn generate(spec: &GenSpec) -> Result<BoundaryPair> {
    Ok(generate_with_form(spec)?.0)
}
