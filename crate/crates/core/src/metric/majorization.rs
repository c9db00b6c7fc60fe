//! Weak majorization of singular value profiles under `f(t) = √log(1 + t^p)`.

use serde::Serialize;

use super::{check_p, log1p_pow, same_order};
use crate::error::{Error, Result};
use crate::matrix::{singular_values, ComplexMatrix};

/// `f(t) = √log(1 + t^p)`.
pub fn sqrt_log1p_pow(t: f64, p: f64) -> f64 {
    log1p_pow(t, p).sqrt()
}

/// Largest second divided difference `2 f[t_{k-1}, t_k, t_{k+1}]` of `f` over the grid.
///
/// Returns `-∞` when the grid has fewer than three points.
pub fn concavity_profile(p: f64, grid: &[f64]) -> Result<f64> {
    check_p(p)?;
    if grid.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
        return Err(Error::validation("grid points must be positive and finite"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::validation("grid must be strictly increasing"));
    }
    let f: Vec<f64> = grid.iter().map(|&t| sqrt_log1p_pow(t, p)).collect();
    let worst = grid
        .windows(3)
        .zip(f.windows(3))
        .map(|(t, v)| {
            let (h0, h1) = (t[1] - t[0], t[2] - t[1]);
            2.0 * ((v[2] - v[1]) / h1 - (v[1] - v[0]) / h0) / (h0 + h1)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(worst)
}

/// Slack added to each partial sum comparison.
pub const MAJORIZATION_SLACK: f64 = 1e-12;

/// `x ≺_w y`: partial sums of `x` sorted descending never exceed those of `y`.
pub fn weak_majorization(x: &[f64], y: &[f64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: format!("{}", x.len()), found: format!("{}", y.len()) });
    }
    if x.iter().chain(y).any(|&v| !(v >= 0.0)) {
        return Err(Error::validation("weak majorization is checked on nonnegative vectors"));
    }
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    };
    let (xs, ys) = (sorted(x), sorted(y));
    let (mut sx, mut sy) = (0.0, 0.0);
    for (a, b) in xs.iter().zip(&ys) {
        sx += a;
        sy += b;
        if sx > sy + MAJORIZATION_SLACK * (1.0 + sy.abs()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(f(σ(A+B)), f(σ(A)) + f(σ(B)))`, singular values in decreasing order.
pub fn uchiyama_vectors(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    same_order(a, b)?;
    check_p(p)?;
    let f = |m: &nalgebra::DMatrix<crate::C64>| -> Vec<f64> {
        singular_values(m).into_iter().map(|s| sqrt_log1p_pow(s, p)).collect()
    };
    let lhs = f(&(a.as_dmatrix() + b.as_dmatrix()));
    let rhs = f(a.as_dmatrix()).into_iter().zip(f(b.as_dmatrix())).map(|(u, v)| u + v).collect();
    Ok((lhs, rhs))
}

pub fn uchiyama_check(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<bool> {
    let (lhs, rhs) = uchiyama_vectors(a, b, p)?;
    weak_majorization(&lhs, &rhs)
}

/// The scalar steps from weak majorization to the triangle inequality for `δ_p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChainCheck {
    /// `f(c) ≺_w f(a) + f(b)`.
    pub majorized: bool,
    /// The same after squaring each entry.
    pub squared_majorized: bool,
    /// `√Σ(f(a_j) + f(b_j))² ≤ √Σ f(a_j)² + √Σ f(b_j)²`.
    pub minkowski: bool,
    /// `√Σ f(c_j)² - √Σ f(a_j)² - √Σ f(b_j)²`, nonpositive when the triangle inequality holds.
    pub triangle_gap: f64,
}

/// Runs the chain for `A = X - Z`, `B = Z - Y`, `C = X - Y`.
pub fn majorization_chain(x: &ComplexMatrix, y: &ComplexMatrix, z: &ComplexMatrix, p: f64) -> Result<ChainCheck> {
    same_order(x, y)?;
    same_order(x, z)?;
    let a = ComplexMatrix::wrap(x.as_dmatrix() - z.as_dmatrix());
    let b = ComplexMatrix::wrap(z.as_dmatrix() - y.as_dmatrix());
    let (fc, sum) = uchiyama_vectors(&a, &b, p)?;
    let f = |m: &ComplexMatrix| -> Vec<f64> {
        singular_values(m.as_dmatrix()).into_iter().map(|s| sqrt_log1p_pow(s, p)).collect()
    };
    let (fa, fb) = (f(&a), f(&b));

    let majorized = weak_majorization(&fc, &sum)?;
    let sq = |v: &[f64]| v.iter().map(|t| t * t).collect::<Vec<_>>();
    let squared_majorized = weak_majorization(&sq(&fc), &sq(&sum))?;
    let norm = |v: &[f64]| v.iter().map(|t| t * t).sum::<f64>().sqrt();
    let minkowski = norm(&sum) <= (norm(&fa) + norm(&fb)) * (1.0 + MAJORIZATION_SLACK);
    let triangle_gap = norm(&fc) - norm(&fa) - norm(&fb);
    Ok(ChainCheck { majorized, squared_majorized, minkowski, triangle_gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{gaussian_matrix, substream};
    use crate::{Field, C64};

    #[test]
    fn majorization_examples() {
        assert!(weak_majorization(&[0.3, 0.2], &[0.3, 0.2]).unwrap());
        assert!(!weak_majorization(&[1.0, 0.0], &[0.6, 0.5]).unwrap());
        assert!(weak_majorization(&[0.5, 0.5], &[1.0, 0.0]).unwrap());
        assert!(weak_majorization(&[0.0, 0.5], &[0.6, 0.0]).unwrap());
        assert!(weak_majorization(&[-0.1], &[1.0]).is_err());
        assert!(weak_majorization(&[0.1], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn concavity_examples() {
        assert!(concavity_profile(1.0, &[0.5, 1.0, 2.0]).unwrap() <= 0.0);
        let grid: Vec<f64> = (0..200).map(|k| 10f64.powf(-2.0 + 4.0 * k as f64 / 199.0)).collect();
        assert!(concavity_profile(2.0, &grid).unwrap() <= 1e-8);
        assert_eq!(concavity_profile(1.0, &[1.0]).unwrap(), f64::NEG_INFINITY);
        assert!(concavity_profile(1.0, &[2.0, 1.0, 3.0]).is_err());
        assert!(concavity_profile(3.0, &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn uchiyama_trivial_cases() {
        let mut rng = substream(31, 0);
        let a = ComplexMatrix::wrap(gaussian_matrix(&mut rng, 3, 3, Field::Complex));
        let zero = ComplexMatrix::zeros(3, 3);
        let (lhs, rhs) = uchiyama_vectors(&a, &zero, 1.0).unwrap();
        assert_eq!(lhs, rhs);
        let d = ComplexMatrix::from_diagonal(&[C64::new(2.0, 0.0), C64::new(0.5, 0.0), C64::new(0.0, 0.0)]);
        for p in [0.5, 1.0, 2.0] {
            assert!(uchiyama_check(&d, &d, p).unwrap());
        }
    }

    #[test]
    fn chain_on_random_triples() {
        let mut rng = substream(32, 0);
        for _ in 0..200 {
            let [x, y, z] = [0, 1, 2].map(|_| ComplexMatrix::wrap(gaussian_matrix(&mut rng, 3, 3, Field::Complex)));
            for p in [0.5, 1.0, 2.0] {
                let chain = majorization_chain(&x, &y, &z, p).unwrap();
                assert!(chain.majorized && chain.squared_majorized && chain.minkowski);
                assert!(chain.triangle_gap <= 1e-12);
            }
        }
    }
}
