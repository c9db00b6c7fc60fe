//! Log-determinant distances: `d` on strict contractions, the S-divergence on
//! positive definite matrices, and `δ_p` on arbitrary square matrices, with the
//! Möbius reduction and majorization steps behind their triangle inequalities.

mod majorization;
mod mobius;
mod triangle;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{
    as_contraction, hermitian_eigen, log_det_right_halfplane, singular_values, ComplexMatrix, Contraction,
    HermitianMatrix, C64, DEFAULT_MARGIN,
};

pub use majorization::{
    concavity_profile, majorization_chain, sqrt_log1p_pow, uchiyama_check, uchiyama_vectors, weak_majorization,
    ChainCheck, MAJORIZATION_SLACK,
};
pub use mobius::{
    decomposition_check, delta_halfplane_sq, mobius, mobius_transform, relative_gap, DecompositionCheck, MobiusPair,
};
pub use triangle::{triangle_suite, triple_gaps, TriangleMetric, TriangleReport, TripleGaps};

/// Roundoff allowance below zero for squared distances.
pub const NEGATIVE_CLAMP: f64 = 1e-12;

/// Relative singular value cutoff for the rank in `δ_0`.
pub const RANK_TOL: f64 = 1e-10;

/// A squared distance and its square root.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistanceValue {
    pub squared: f64,
    pub value: f64,
}

impl DistanceValue {
    /// Values in `[-1e-12, 0)` are clamped to zero; anything lower is an error.
    pub fn from_squared(squared: f64) -> Result<Self> {
        if !squared.is_finite() {
            return Err(Error::numerical(format!("squared distance is {squared}")));
        }
        if squared < -NEGATIVE_CLAMP {
            return Err(Error::InvariantViolation(format!("squared distance {squared} is negative")));
        }
        let squared = squared.max(0.0);
        Ok(Self { squared, value: squared.sqrt() })
    }
}

fn same_order(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<usize> {
    let n = a.require_square("first argument")?;
    let m = b.require_square("second argument")?;
    if n != m {
        return Err(Error::DimensionMismatch { expected: format!("{n}x{n}"), found: format!("{m}x{m}") });
    }
    Ok(n)
}

/// `d²(A,B) = Re log det(I - A^*B) - ½ log det(I - A^*A) - ½ log det(I - B^*B)`.
pub fn hua_distance_sq(a: &Contraction, b: &Contraction) -> Result<DistanceValue> {
    let n = same_order(a, b)?;
    let identity = DMatrix::<C64>::identity(n, n);
    let log_det = |x: &Contraction, y: &Contraction| -> Result<f64> {
        Ok(log_det_right_halfplane(&(&identity - x.adjoint().as_dmatrix() * y.as_dmatrix()))?.re)
    };
    DistanceValue::from_squared(log_det(a, b)? - 0.5 * log_det(a, a)? - 0.5 * log_det(b, b)?)
}

fn require_pd(x: &HermitianMatrix, what: &str) -> Result<f64> {
    let eig = hermitian_eigen(x)?;
    if eig.min() <= 0.0 {
        return Err(Error::validation(format!("{what} is not positive definite (min eigenvalue {})", eig.min())));
    }
    Ok(eig.values.iter().map(|v| v.ln()).sum())
}

/// `δ_S²(X,Y) = log det((X+Y)/2) - ½ log det X - ½ log det Y`.
pub fn s_divergence(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<DistanceValue> {
    same_order(x, y)?;
    let ldx = require_pd(x, "X")?;
    let ldy = require_pd(y, "Y")?;
    let mid = HermitianMatrix::new(ComplexMatrix::wrap((x.as_dmatrix() + y.as_dmatrix()) * C64::new(0.5, 0.0)))?;
    let ldm = require_pd(&mid, "(X+Y)/2")?;
    DistanceValue::from_squared(ldm - 0.5 * ldx - 0.5 * ldy)
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=2.0).contains(&p) {
        return Err(Error::validation(format!("p = {p} outside [0, 2]")));
    }
    Ok(())
}

/// `f(t) = log(1 + t^p)` with the convention `f(0) = 0` at `p = 0`.
fn log1p_pow(t: f64, p: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t.powf(p).ln_1p()
    }
}

/// `Σ_j log(1 + σ_j^p)` over the singular values of `z`; at `p = 0`, `rank(z) · log 2`.
pub fn log_det_one_plus_abs_pow(z: &DMatrix<C64>, p: f64) -> Result<f64> {
    check_p(p)?;
    let sv = singular_values(z);
    if p == 0.0 {
        let cutoff = RANK_TOL * sv.first().copied().unwrap_or(0.0);
        let rank = sv.iter().filter(|&&s| s > cutoff).count();
        return Ok(rank as f64 * std::f64::consts::LN_2);
    }
    Ok(sv.iter().map(|&s| log1p_pow(s, p)).sum())
}

/// `δ_p²(X,Y) = log det(I + |X - Y|^p)`, `0 ≤ p ≤ 2`.
pub fn delta_p_sq(x: &ComplexMatrix, y: &ComplexMatrix, p: f64) -> Result<DistanceValue> {
    same_order(x, y)?;
    DistanceValue::from_squared(log_det_one_plus_abs_pow(&(x.as_dmatrix() - y.as_dmatrix()), p)?)
}

/// `log(|1 - x^*y| / √((1 - ‖x‖²)(1 - ‖y‖²)))` for vectors in the open unit ball.
pub fn cayley_klein_sq(x: &[C64], y: &[C64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: format!("{}", x.len()), found: format!("{}", y.len()) });
    }
    let nx: f64 = x.iter().map(|z| z.norm_sqr()).sum();
    let ny: f64 = y.iter().map(|z| z.norm_sqr()).sum();
    if nx >= 1.0 || ny >= 1.0 {
        return Err(Error::validation("vectors must lie in the open unit ball"));
    }
    let inner: C64 = x.iter().zip(y).map(|(a, b)| a.conj() * b).sum();
    Ok((C64::new(1.0, 0.0) - inner).norm().ln() - 0.5 * (1.0 - nx).ln() - 0.5 * (1.0 - ny).ln())
}

/// The contraction `e_1 x^*` (first row `x^*`), whose `d` reproduces [`cayley_klein_sq`].
pub fn row_embedding(x: &[C64]) -> Result<Contraction> {
    let n = x.len();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for (j, z) in x.iter().enumerate() {
        m[(0, j)] = z.conj();
    }
    as_contraction(ComplexMatrix::new(m)?, DEFAULT_MARGIN)
}

/// `d²` between `Diag(x)` and `Diag(y)`: the sum of one-dimensional Cayley-Klein terms.
pub fn diagonal_cayley_klein_sq(x: &[C64], y: &[C64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: format!("{}", x.len()), found: format!("{}", y.len()) });
    }
    x.iter().zip(y).map(|(a, b)| cayley_klein_sq(&[*a], &[*b])).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_contraction, random_hpd, substream};
    use crate::Field;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn hpd_diag(values: &[f64]) -> HermitianMatrix {
        let d: Vec<C64> = values.iter().map(|&v| c(v, 0.0)).collect();
        HermitianMatrix::new(ComplexMatrix::from_diagonal(&d)).unwrap()
    }

    #[test]
    fn clamping_rule() {
        assert_eq!(DistanceValue::from_squared(-5e-13).unwrap().squared, 0.0);
        assert!(DistanceValue::from_squared(-2e-12).is_err());
        assert!(DistanceValue::from_squared(f64::NAN).is_err());
        assert_eq!(DistanceValue::from_squared(4.0).unwrap().value, 2.0);
    }

    #[test]
    fn hua_distance_vanishes_on_diagonal() {
        let mut rng = substream(11, 0);
        for _ in 0..20 {
            let a = random_contraction(&mut rng, 3, Field::Complex);
            assert_eq!(hua_distance_sq(&a, &a).unwrap().squared, 0.0);
        }
        let z = as_contraction(ComplexMatrix::zeros(2, 2), DEFAULT_MARGIN).unwrap();
        assert_eq!(hua_distance_sq(&z, &z).unwrap().squared, 0.0);
    }

    #[test]
    fn vector_and_diagonal_cayley_klein() {
        let x = [c(0.3, 0.1), c(-0.2, 0.4)];
        let y = [c(0.1, -0.5), c(0.6, 0.0)];
        let direct = hua_distance_sq(&row_embedding(&x).unwrap(), &row_embedding(&y).unwrap()).unwrap();
        assert!((direct.squared - cayley_klein_sq(&x, &y).unwrap()).abs() <= 1e-12);

        let dx = as_contraction(ComplexMatrix::from_diagonal(&x), DEFAULT_MARGIN).unwrap();
        let dy = as_contraction(ComplexMatrix::from_diagonal(&y), DEFAULT_MARGIN).unwrap();
        let diag = hua_distance_sq(&dx, &dy).unwrap();
        assert!((diag.squared - diagonal_cayley_klein_sq(&x, &y).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn s_divergence_examples() {
        let v = s_divergence(&hpd_diag(&[1.0]), &hpd_diag(&[4.0])).unwrap();
        assert!((v.squared - 1.25f64.ln()).abs() < 1e-15);
        let v = s_divergence(&hpd_diag(&[1.0, 4.0]), &hpd_diag(&[4.0, 1.0])).unwrap();
        assert!((v.squared - (6.25f64 / 4.0).ln()).abs() < 1e-15);
        let mut rng = substream(12, 0);
        let x = random_hpd(&mut rng, 3, Field::Complex);
        assert_eq!(s_divergence(&x, &x).unwrap().squared, 0.0);
        assert!(s_divergence(&hpd_diag(&[1.0, -1.0]), &hpd_diag(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn delta_p_examples() {
        let x = ComplexMatrix::from_rows(&[vec![c(0.7, -0.2)]]).unwrap();
        let y = ComplexMatrix::from_rows(&[vec![c(-0.4, 0.9)]]).unwrap();
        let gap = (c(0.7, -0.2) - c(-0.4, 0.9)).norm();
        for p in [0.25, 1.0, 2.0] {
            let v = delta_p_sq(&x, &y, p).unwrap();
            assert!((v.squared - gap.powf(p).ln_1p()).abs() < 1e-15);
        }
        assert!((delta_p_sq(&x, &y, 0.0).unwrap().squared - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(delta_p_sq(&x, &x, 1.3).unwrap().squared, 0.0);
        assert_eq!(delta_p_sq(&x, &x, 0.0).unwrap().squared, 0.0);
        assert!(delta_p_sq(&x, &y, 2.5).is_err());
        assert!(delta_p_sq(&x, &y, -0.1).is_err());
    }

    #[test]
    fn delta_two_is_log_det_of_gram() {
        let mut rng = substream(13, 0);
        let x = ComplexMatrix::wrap(crate::sampling::gaussian_matrix(&mut rng, 3, 3, Field::Complex));
        let y = ComplexMatrix::wrap(crate::sampling::gaussian_matrix(&mut rng, 3, 3, Field::Complex));
        let z = x.as_dmatrix() - y.as_dmatrix();
        let gram = DMatrix::<C64>::identity(3, 3) + z.adjoint() * &z;
        let expected = gram.determinant().re.ln();
        assert!((delta_p_sq(&x, &y, 2.0).unwrap().squared - expected).abs() <= 1e-12 * expected.abs().max(1.0));
    }

    #[test]
    fn rank_rule_at_zero() {
        let x = ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let y = ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(0.0, 0.0), c(3.0, 1e-13)]);
        let v = delta_p_sq(&x, &y, 0.0).unwrap();
        assert_eq!(v.squared, std::f64::consts::LN_2);
    }
}
