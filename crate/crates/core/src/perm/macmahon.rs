//! Truncations of the α-permanent expansion
//! `det(I - XA)^{-α} = Σ_m x^m / m! · per_α(A[m])`, with `X = Diag(x)`.

use nalgebra::DMatrix;

use super::partition::MultiIndex;
use super::permanent::block_alpha_permanent;
use crate::error::{Error, Result};
use crate::matrix::{log_det_right_halfplane, spectral_norm, ComplexMatrix, C64};

fn scaled_rows(a: &ComplexMatrix, x: &[C64]) -> Result<DMatrix<C64>> {
    let n = a.require_square("series matrix")?;
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: format!("{n} weights"), found: format!("{}", x.len()) });
    }
    let mut xa = a.as_dmatrix().clone();
    for (i, &w) in x.iter().enumerate() {
        xa.row_mut(i).iter_mut().for_each(|z| *z *= w);
    }
    Ok(xa)
}

fn check_convergent(a: &ComplexMatrix, x: &[C64]) -> Result<DMatrix<C64>> {
    let xa = scaled_rows(a, x)?;
    let norm = spectral_norm(&ComplexMatrix::wrap(xa.clone()));
    if norm >= 1.0 {
        return Err(Error::validation(format!("series diverges: ||XA|| = {norm} >= 1")));
    }
    Ok(xa)
}

/// `det(I - XA)^{-α}` through the principal per-eigenvalue logarithm.
pub fn macmahon_closed_form(a: &ComplexMatrix, x: &[C64], alpha: C64) -> Result<C64> {
    let xa = check_convergent(a, x)?;
    let n = xa.nrows();
    let log_det = log_det_right_halfplane(&(DMatrix::identity(n, n) - xa))?;
    Ok((-alpha * log_det).exp())
}

/// Partial sums of the series, entry `d` covering all `|m| ≤ d` for `d = 0..=order`.
pub fn macmahon_partial_sums(a: &ComplexMatrix, x: &[C64], alpha: C64, order: usize) -> Result<Vec<C64>> {
    check_convergent(a, x)?;
    let n = a.order();
    let mut running = C64::new(0.0, 0.0);
    let mut out = Vec::with_capacity(order + 1);
    for degree in 0..=order {
        for m in MultiIndex::with_total(n, degree) {
            let monomial: C64 = m.components().iter().zip(x).map(|(&k, w)| w.powu(k as u32)).product();
            running += monomial / m.factorial() * block_alpha_permanent(a, &m, alpha)?;
        }
        out.push(running);
    }
    Ok(out)
}

/// Sum of all terms with `|m| ≤ order`.
pub fn macmahon_partial_sum(a: &ComplexMatrix, x: &[C64], alpha: C64, order: usize) -> Result<C64> {
    Ok(*macmahon_partial_sums(a, x, alpha, order)?.last().expect("order + 1 entries"))
}

/// Rising factorial `(α)_k = α(α+1)...(α+k-1)`.
pub fn rising_factorial(alpha: C64, k: usize) -> C64 {
    (0..k).map(|j| alpha + j as f64).product()
}
