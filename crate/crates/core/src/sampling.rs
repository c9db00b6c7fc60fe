//! Seeded random generators for the property suites and the counterexample
//! search.
//!
//! Every trial or sample index gets its own ChaCha stream keyed by the run
//! seed, so results do not depend on how work is split across threads.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::{as_contraction, spectral_norm, ComplexMatrix, Contraction, HermitianMatrix, C64};
use crate::Field;

/// Range of the shrink factor `s` in `G / (s ||G||)`; small `s` lands near the
/// boundary of the unit ball.
pub const SHRINK_RANGE: (f64, f64) = (1.05, 4.0);

/// Independent generator for sample `index` of the run keyed by `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, field: Field) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = match field {
            Field::Real => 0.0,
            Field::Complex => rng.sample(StandardNormal),
        };
        C64::new(re, im)
    })
}

/// `G / (s ||G||)` with Gaussian `G` and `s` uniform in [`SHRINK_RANGE`].
pub fn random_contraction<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field) -> Contraction {
    loop {
        let g = ComplexMatrix::wrap(gaussian_matrix(rng, n, n, field));
        let norm = spectral_norm(&g);
        if norm == 0.0 {
            continue;
        }
        let s = rng.random_range(SHRINK_RANGE.0..SHRINK_RANGE.1);
        let scaled = ComplexMatrix::wrap(g.as_dmatrix().unscale(s * norm));
        if let Ok(c) = as_contraction(scaled, crate::matrix::DEFAULT_MARGIN) {
            return c;
        }
    }
}

/// Haar-distributed unitary (orthogonal for the real field) from the QR factorisation of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field) -> DMatrix<C64> {
    let qr = gaussian_matrix(rng, n, n, field).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut out = q;
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        out.column_mut(j).iter_mut().for_each(|z| *z *= phase);
    }
    out
}

/// Rescales `m` to the given operator norm.
pub fn scale_to_norm(m: &ComplexMatrix, target: f64) -> Option<ComplexMatrix> {
    let norm = spectral_norm(m);
    (norm > 0.0).then(|| ComplexMatrix::wrap(m.as_dmatrix().scale(target / norm)))
}

/// Hermitian positive definite `G G^*/n + c I` with `c` uniform in [0.05, 1].
pub fn random_hpd<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field) -> HermitianMatrix {
    let g = gaussian_matrix(rng, n, n, field);
    let shift = rng.random_range(0.05..1.0);
    let m = &g * g.adjoint() / C64::new(n as f64, 0.0) + DMatrix::identity(n, n) * C64::new(shift, 0.0);
    HermitianMatrix::from_hermitian_part(&m)
}
