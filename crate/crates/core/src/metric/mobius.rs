//! The Cayley-type map `A ↦ (I - A)^{-1}(I + A)` onto matrices with positive
//! definite real part, and the half-plane form of `d²`.

use nalgebra::DMatrix;
use serde::Serialize;

use super::{log_det_one_plus_abs_pow, s_divergence, same_order, DistanceValue};
use crate::error::{Error, Result};
use crate::matrix::{
    hermitian_eigen, hermitian_parts, inverse, inverse_sqrt_hpd, log_abs_det, max_abs_diff_raw, relative_residual,
    ComplexMatrix, Contraction, HermitianMatrix, C64,
};

/// Largest allowed deviation of the simultaneous diagonalization from exactness.
pub const DIAGONALIZATION_TOL: f64 = 1e-9;

/// `(I - A)^{-1}(I + A)`.
pub fn mobius(a: &Contraction) -> Result<ComplexMatrix> {
    let n = a.order();
    let identity = DMatrix::<C64>::identity(n, n);
    Ok(ComplexMatrix::wrap(inverse(&(&identity - a.as_dmatrix()))? * (&identity + a.as_dmatrix())))
}

/// Images `X`, `Y` of `A`, `B` and the residuals of the two identities they satisfy.
#[derive(Clone, Debug, Serialize)]
pub struct MobiusPair {
    #[serde(skip)]
    pub x: ComplexMatrix,
    #[serde(skip)]
    pub y: ComplexMatrix,
    /// `I - A^*B` against `2(I + X^*)^{-1}(X^* + Y)(I + Y)^{-1}`.
    pub residual_product: f64,
    /// `Re X` against `¼(I + X^*)(I - A^*A)(I + X)`, worst of `X` and `Y`.
    pub residual_real_part: f64,
    pub min_eig_re_x: f64,
    pub min_eig_re_y: f64,
}

fn real_part_residual(a: &Contraction, x: &ComplexMatrix) -> f64 {
    let n = a.order();
    let identity = DMatrix::<C64>::identity(n, n);
    let (re, _) = hermitian_parts(x.as_dmatrix());
    let closed = (&identity + x.adjoint().as_dmatrix())
        * (&identity - a.adjoint().as_dmatrix() * a.as_dmatrix())
        * (&identity + x.as_dmatrix())
        * C64::new(0.25, 0.0);
    relative_residual(re.as_dmatrix(), &closed)
}

fn min_real_part_eigenvalue(x: &ComplexMatrix) -> Result<f64> {
    let (re, _) = hermitian_parts(x.as_dmatrix());
    Ok(hermitian_eigen(&re)?.min())
}

pub fn mobius_transform(a: &Contraction, b: &Contraction) -> Result<MobiusPair> {
    let n = same_order(a, b)?;
    let identity = DMatrix::<C64>::identity(n, n);
    let x = mobius(a)?;
    let y = mobius(b)?;

    let lhs = &identity - a.adjoint().as_dmatrix() * b.as_dmatrix();
    let x_adj = x.adjoint();
    let rhs = inverse(&(&identity + x_adj.as_dmatrix()))?
        * (x_adj.as_dmatrix() + y.as_dmatrix())
        * inverse(&(&identity + y.as_dmatrix()))?
        * C64::new(2.0, 0.0);
    let residual_product = relative_residual(&lhs, &rhs);

    let residual_real_part = real_part_residual(a, &x).max(real_part_residual(b, &y));

    let min_eig_re_x = min_real_part_eigenvalue(&x)?;
    let min_eig_re_y = min_real_part_eigenvalue(&y)?;
    Ok(MobiusPair { x, y, residual_product, residual_real_part, min_eig_re_x, min_eig_re_y })
}

fn require_re_pd(x: &ComplexMatrix, what: &str) -> Result<()> {
    let min = min_real_part_eigenvalue(x)?;
    if min <= 0.0 {
        return Err(Error::validation(format!("Re {what} is not positive definite (min eigenvalue {min})")));
    }
    Ok(())
}

/// `δ²(X,Y) = log|det(X^* + Y)| - ½ log det(X^* + X) - ½ log det(Y^* + Y)`.
pub fn delta_halfplane_sq(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<DistanceValue> {
    same_order(x, y)?;
    require_re_pd(x, "X")?;
    require_re_pd(y, "Y")?;
    let (xa, ya) = (x.adjoint(), y.adjoint());
    let cross = log_abs_det(&(xa.as_dmatrix() + y.as_dmatrix()))?;
    let own_x = log_abs_det(&(xa.as_dmatrix() + x.as_dmatrix()))?;
    let own_y = log_abs_det(&(ya.as_dmatrix() + y.as_dmatrix()))?;
    DistanceValue::from_squared(cross - 0.5 * own_x - 0.5 * own_y)
}

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Both sides of `δ²(X,Y) = δ_S²(D_x, D_y) + ½ δ_2²(S_x, S_y)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DecompositionCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub s_divergence_term: f64,
    pub delta_two_term: f64,
    /// [`relative_gap`] of the two sides.
    pub residual: f64,
    /// `max|D_x + D_y - I|`.
    pub partition_residual: f64,
}

/// With `T = Re(X+Y)^{-1/2}` and `U` diagonalizing `T Re(X) T`:
/// `D_x = U^*T Re(X) T U`, `D_y = I - D_x`, `S_x = U^*T Im(X) T U`.
pub fn decomposition_check(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<DecompositionCheck> {
    let n = same_order(x, y)?;
    let lhs = delta_halfplane_sq(x, y)?.squared;
    let (re_x, im_x) = hermitian_parts(x.as_dmatrix());
    let (re_y, im_y) = hermitian_parts(y.as_dmatrix());

    let sum = HermitianMatrix::from_hermitian_part(&(re_x.as_dmatrix() + re_y.as_dmatrix()));
    let t = inverse_sqrt_hpd(&sum)?;
    let congruence = |h: &HermitianMatrix| t.as_dmatrix() * h.as_dmatrix() * t.as_dmatrix();
    let eig = hermitian_eigen(&HermitianMatrix::from_hermitian_part(&congruence(&re_x)))?;
    let u = &eig.vectors;
    let rotate = |m: DMatrix<C64>| u.adjoint() * m * u;

    let d_x = rotate(congruence(&re_x));
    let d_y = rotate(congruence(&re_y));
    let identity = DMatrix::<C64>::identity(n, n);
    let partition_residual = max_abs_diff_raw(&(&d_x + &d_y), &identity);
    let off_diagonal = |m: &DMatrix<C64>| {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    worst = worst.max(m[(i, j)].norm());
                }
            }
        }
        worst
    };
    let diagonal_defect = off_diagonal(&d_x).max(off_diagonal(&d_y));
    if partition_residual > DIAGONALIZATION_TOL || diagonal_defect > DIAGONALIZATION_TOL {
        return Err(Error::numerical(format!(
            "simultaneous diagonalization failed (D_x + D_y - I: {partition_residual:e}, off-diagonal: {diagonal_defect:e})"
        )));
    }

    let diag = |m: &DMatrix<C64>| {
        let d: Vec<C64> = (0..n).map(|k| C64::new(m[(k, k)].re, 0.0)).collect();
        HermitianMatrix::new(ComplexMatrix::from_diagonal(&d))
    };
    let s_divergence_term = s_divergence(&diag(&d_x)?, &diag(&d_y)?)?.squared;
    let s_gap = rotate(congruence(&im_x)) - rotate(congruence(&im_y));
    let delta_two_term = log_det_one_plus_abs_pow(&s_gap, 2.0)?;
    let rhs = s_divergence_term + 0.5 * delta_two_term;
    Ok(DecompositionCheck {
        lhs,
        rhs,
        s_divergence_term,
        delta_two_term,
        residual: relative_gap(lhs, rhs),
        partition_residual,
    })
}
