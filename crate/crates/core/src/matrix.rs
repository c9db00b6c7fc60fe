//! Dense complex matrices, strict contractions, and the spectral utilities the
//! rest of the crate is built on.
//!
//! All tolerances here are relative to `1 + max|entry|` so that checks behave
//! the same way for matrices of very different scale.

use std::fmt;
use std::ops::Deref;

use nalgebra::{Complex, DMatrix, Schur, SymmetricEigen};

use crate::error::{Error, Result};

/// Complex double-precision scalar.
pub type C64 = Complex<f64>;

/// Default gap kept below the unit operator-norm ball for strict contractions.
pub const DEFAULT_MARGIN: f64 = 1e-9;

/// Allowed Hermitian defect, relative to `1 + max|entry|`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Allowed eigen-reconstruction residual, relative to `1 + max|entry|`.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-10;

const MAX_ITERATIONS: usize = 10_000;

/// A dense complex matrix with finite entries.
///
/// User-facing constructors reject empty shapes; the 0x0 matrix only arises
/// internally (a block expansion with an all-zero multi-index).
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    /// Wraps an nalgebra matrix after checking shape and finiteness.
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::validation("matrix must have at least one row and column"));
        }
        if let Some(z) = m.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::validation(format!("non-finite entry {z}")));
        }
        Ok(Self(m))
    }

    /// Builds a matrix from row vectors, which must all have the same length.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: format!("{ncols} columns"),
                found: format!("{} columns", bad.len()),
            });
        }
        Self::new(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_real(m: &DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|x| C64::new(x, 0.0)))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        Self(DMatrix::from_fn(n, n, |i, j| if i == j { diag[i] } else { C64::new(0.0, 0.0) }))
    }

    /// The 0x0 matrix.
    pub fn empty() -> Self {
        Self(DMatrix::zeros(0, 0))
    }

    /// Wraps a matrix produced by crate-internal arithmetic on valid inputs.
    pub(crate) fn wrap(m: DMatrix<C64>) -> Self {
        debug_assert!(m.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        Self(m)
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn is_square(&self) -> bool {
        self.0.nrows() == self.0.ncols()
    }

    /// Side length; only meaningful for square matrices.
    pub fn order(&self) -> usize {
        self.0.nrows()
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.0)
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub(crate) fn require_square(&self, what: &str) -> Result<usize> {
        if self.is_square() {
            Ok(self.order())
        } else {
            Err(Error::validation(format!(
                "{what} must be square, got {}x{}",
                self.0.nrows(),
                self.0.ncols()
            )))
        }
    }
}

impl Deref for ComplexMatrix {
    type Target = DMatrix<C64>;

    fn deref(&self) -> &DMatrix<C64> {
        &self.0
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{:?}", self.0.shape())?;
        for row in self.0.row_iter() {
            f.write_str("\n  [")?;
            for (k, z) in row.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{:.6}{:+.6}i", z.re, z.im)?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// A square matrix with operator norm at most `1 - margin`.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction {
    matrix: ComplexMatrix,
    norm: f64,
    margin: f64,
}

impl Contraction {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Cached operator norm (largest singular value).
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

impl Deref for Contraction {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// A square matrix equal to its conjugate transpose up to [`HERMITIAN_TOL`].
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    matrix: ComplexMatrix,
    defect: f64,
}

impl HermitianMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.require_square("Hermitian matrix")?;
        let defect = max_abs_diff(&matrix, &matrix.adjoint());
        if defect > HERMITIAN_TOL * (1.0 + matrix.max_abs()) {
            return Err(Error::validation(format!("matrix is not Hermitian (defect {defect:e})")));
        }
        Ok(Self { matrix, defect })
    }

    /// Averages `M` with its adjoint, making the result exactly Hermitian.
    pub(crate) fn from_hermitian_part(m: &DMatrix<C64>) -> Self {
        let h = (m + m.adjoint()).scale(0.5);
        Self { matrix: ComplexMatrix::wrap(h), defect: 0.0 }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `max|H - H*|` measured at construction.
    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }
}

impl Deref for HermitianMatrix {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: DMatrix<C64>,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }
}

/// Largest singular value.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.as_dmatrix().singular_values().max()
}

/// Singular values in descending order.
pub fn singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Validates that `m` is square with operator norm at most `1 - margin`.
pub fn as_contraction(m: ComplexMatrix, margin: f64) -> Result<Contraction> {
    if !(margin > 0.0 && margin < 1.0) {
        return Err(Error::validation(format!("margin must lie in (0, 1), got {margin}")));
    }
    m.require_square("contraction")?;
    let norm = spectral_norm(&m);
    let limit = 1.0 - margin;
    if norm > limit {
        return Err(Error::NotContraction { norm, limit });
    }
    Ok(Contraction { matrix: m, norm, margin })
}

/// `(X + X^T) / 2` with the plain transpose.
pub fn symmetrize(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    x.require_square("symmetrize input")?;
    Ok(ComplexMatrix::wrap((x.as_dmatrix() + x.transpose().as_dmatrix()).scale(0.5)))
}

/// `|X| = (X^*X)^{1/2}`, the principal square root.
pub fn matrix_abs(x: &ComplexMatrix) -> Result<HermitianMatrix> {
    x.require_square("matrix_abs input")?;
    let gram = HermitianMatrix::from_hermitian_part(&(x.adjoint().as_dmatrix() * x.as_dmatrix()));
    let eig = hermitian_eigen(&gram)?;
    let root = spectral_function(&eig, |v| v.max(0.0).sqrt());
    Ok(HermitianMatrix::from_hermitian_part(&root))
}

/// Eigenvalues (descending) and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(h: &HermitianMatrix) -> Result<HermitianEigen> {
    let m = h.as_dmatrix();
    let n = m.nrows();
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, MAX_ITERATIONS)
        .ok_or_else(|| Error::numerical(format!("Hermitian eigensolver did not converge (n = {n})")))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);

    let out = HermitianEigen { values, vectors };
    let rebuilt = spectral_function(&out, |v| v);
    let residual = max_abs_diff_raw(&rebuilt, m);
    let scale = 1.0 + max_abs(m);
    if residual > EIGEN_RESIDUAL_TOL * scale {
        return Err(Error::numerical(format!(
            "eigen reconstruction residual {residual:e} exceeds {:e}",
            EIGEN_RESIDUAL_TOL * scale
        )));
    }
    Ok(out)
}

/// `V f(Λ) V^*` for a Hermitian eigen-decomposition.
pub(crate) fn spectral_function(eig: &HermitianEigen, f: impl Fn(f64) -> f64) -> DMatrix<C64> {
    let v = &eig.vectors;
    let mut scaled = v.clone();
    for (j, &lambda) in eig.values.iter().enumerate() {
        let fj = f(lambda);
        scaled.column_mut(j).iter_mut().for_each(|z| *z *= fj);
    }
    scaled * v.adjoint()
}

/// Eigenvalues of a general square complex matrix (no particular order).
pub fn eigenvalues(m: &DMatrix<C64>) -> Result<Vec<C64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let schur = Schur::try_new(m.clone(), f64::EPSILON, MAX_ITERATIONS)
        .ok_or_else(|| Error::numerical(format!("Schur iteration did not converge (n = {n})")))?;
    let (_, t) = schur.unpack();

    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        let diag_scale = t[(i, i)].norm() + if i + 1 < n { t[(i + 1, i + 1)].norm() } else { 0.0 };
        if i + 1 < n && t[(i + 1, i)].norm() > f64::EPSILON * diag_scale.max(f64::MIN_POSITIVE) {
            // Undeflated 2x2 block: solve its characteristic quadratic.
            let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let half_tr = (a + d) * 0.5;
            let disc = ((a - d) * 0.5).powi(2) + b * c;
            let root = disc.sqrt();
            out.push(half_tr + root);
            out.push(half_tr - root);
            i += 2;
        } else {
            out.push(t[(i, i)]);
            i += 1;
        }
    }
    Ok(out)
}

/// `Σ_j Log λ_j(M)` with the principal logarithm taken per eigenvalue.
///
/// Requires every eigenvalue to have strictly positive real part; for
/// `M = I - A^*B` with strict contractions this always holds.
pub fn log_det_right_halfplane(m: &DMatrix<C64>) -> Result<C64> {
    if m.nrows() != m.ncols() {
        return Err(Error::validation("log-determinant needs a square matrix"));
    }
    let mut acc = C64::new(0.0, 0.0);
    for lambda in eigenvalues(m)? {
        if !(lambda.re > 0.0) {
            return Err(Error::Branch { re: lambda.re, im: lambda.im });
        }
        acc += lambda.ln();
    }
    Ok(acc)
}

/// `log|det M|` from the LU factorisation.
pub fn log_abs_det(m: &DMatrix<C64>) -> Result<f64> {
    let lu = m.clone().lu();
    let u = lu.u();
    let mut acc = 0.0;
    for k in 0..u.nrows() {
        let p = u[(k, k)].norm();
        if p == 0.0 {
            return Err(Error::numerical("singular matrix in log|det|"));
        }
        acc += p.ln();
    }
    Ok(acc)
}

/// `log det H` for a Hermitian positive definite matrix, via its eigenvalues.
pub fn log_det_hpd(h: &HermitianMatrix) -> Result<f64> {
    let eig = hermitian_eigen(h)?;
    if !(eig.min() > 0.0) {
        return Err(Error::validation(format!(
            "matrix is not positive definite (min eigenvalue {:e})",
            eig.min()
        )));
    }
    Ok(eig.values.iter().map(|v| v.ln()).sum())
}

pub fn inverse(m: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::numerical("matrix is singular to working precision"))
}

/// Principal inverse square root of a Hermitian positive definite matrix.
pub fn inverse_sqrt_hpd(h: &HermitianMatrix) -> Result<HermitianMatrix> {
    let eig = hermitian_eigen(h)?;
    if !(eig.min() > 0.0) {
        return Err(Error::validation(format!(
            "inverse square root needs a positive definite matrix (min eigenvalue {:e})",
            eig.min()
        )));
    }
    Ok(HermitianMatrix::from_hermitian_part(&spectral_function(&eig, |v| 1.0 / v.sqrt())))
}

/// Hermitian and skew parts: `M = Re(M) + i Im(M)` with both parts Hermitian.
pub fn hermitian_parts(m: &DMatrix<C64>) -> (HermitianMatrix, HermitianMatrix) {
    let adj = m.adjoint();
    let re = HermitianMatrix::from_hermitian_part(&(m + &adj).scale(0.5));
    let i = C64::new(0.0, 1.0);
    let im_raw = (m - &adj) / (i * 2.0);
    let im = HermitianMatrix::from_hermitian_part(&im_raw);
    (re, im)
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    max_abs_diff_raw(a.as_dmatrix(), b.as_dmatrix())
}

pub(crate) fn max_abs_diff_raw(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// `max|A - B| / (1 + max(|A|, |B|))`.
pub(crate) fn relative_residual(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    max_abs_diff_raw(a, b) / (1.0 + max_abs(a).max(max_abs(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rejects_non_finite_and_ragged() {
        assert!(ComplexMatrix::from_rows(&[vec![c(f64::NAN, 0.0)]]).is_err());
        assert!(ComplexMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![]]).is_err());
        assert!(ComplexMatrix::from_rows(&[]).is_err());
    }

    #[test]
    fn spectral_norm_examples() {
        assert_relative_eq!(spectral_norm(&ComplexMatrix::identity(3)), 1.0, epsilon = 1e-14);
        assert_eq!(spectral_norm(&ComplexMatrix::zeros(2, 2)), 0.0);
        assert_relative_eq!(spectral_norm(&real(&[&[0.5, 0.0], &[0.0, 0.3]])), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn contraction_validation() {
        let a = as_contraction(real(&[&[0.5, 0.0], &[0.0, 0.5]]), DEFAULT_MARGIN).unwrap();
        assert_relative_eq!(a.norm(), 0.5, epsilon = 1e-14);
        let err = as_contraction(ComplexMatrix::identity(2), 1e-3).unwrap_err();
        assert!(matches!(err, Error::NotContraction { norm, .. } if (norm - 1.0).abs() < 1e-12));
        assert!(as_contraction(real(&[&[0.1, 0.2]]), DEFAULT_MARGIN).is_err());
    }

    #[test]
    fn symmetrize_examples() {
        let s = real(&[&[1.0, 2.0], &[2.0, 3.0]]);
        assert_eq!(symmetrize(&s).unwrap(), s);
        let n = real(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(symmetrize(&n).unwrap(), real(&[&[0.0, 0.5], &[0.5, 0.0]]));
        let k = real(&[&[0.0, 2.0], &[-2.0, 0.0]]);
        assert_eq!(symmetrize(&k).unwrap(), ComplexMatrix::zeros(2, 2));
        assert!(symmetrize(&real(&[&[1.0, 2.0]])).is_err());
    }

    #[test]
    fn matrix_abs_examples() {
        let h = real(&[&[2.0, 1.0], &[1.0, 2.0]]);
        assert!(max_abs_diff(matrix_abs(&h).unwrap().matrix(), &h) < 1e-12);

        let (cs, sn) = (0.3f64.cos(), 0.3f64.sin());
        let u = ComplexMatrix::from_rows(&[vec![c(cs, 0.0), c(0.0, sn)], vec![c(0.0, sn), c(cs, 0.0)]]).unwrap();
        assert!(max_abs_diff(matrix_abs(&u).unwrap().matrix(), &ComplexMatrix::identity(2)) < 1e-12);

        let z = ComplexMatrix::from_rows(&[vec![c(-3.0, 4.0)]]).unwrap();
        assert_relative_eq!(matrix_abs(&z).unwrap()[(0, 0)].re, 5.0, epsilon = 1e-12);
    }

    #[test]
    fn hermitian_eigen_examples() {
        let d = HermitianMatrix::new(real(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]])).unwrap();
        assert_eq!(hermitian_eigen(&d).unwrap().values, vec![3.0, 2.0, 1.0]);

        let id = HermitianMatrix::new(ComplexMatrix::identity(4)).unwrap();
        assert!(hermitian_eigen(&id).unwrap().values.iter().all(|&v| (v - 1.0).abs() < 1e-14));

        // 2x2 closed form a ± b
        let h = HermitianMatrix::new(real(&[&[2.0, 1.0], &[1.0, 2.0]])).unwrap();
        let vals = hermitian_eigen(&h).unwrap().values;
        assert_relative_eq!(vals[0], 3.0, epsilon = 1e-13);
        assert_relative_eq!(vals[1], 1.0, epsilon = 1e-13);
    }

    #[test]
    fn hermitian_rejects_non_hermitian() {
        assert!(HermitianMatrix::new(real(&[&[1.0, 2.0], &[0.0, 1.0]])).is_err());
    }

    #[test]
    fn log_det_examples() {
        let l = log_det_right_halfplane(&DMatrix::identity(3, 3)).unwrap();
        assert_eq!(l, c(0.0, 0.0));
        let e = std::f64::consts::E;
        let l = log_det_right_halfplane(ComplexMatrix::from_diagonal(&[c(e, 0.0), c(e, 0.0)]).as_dmatrix()).unwrap();
        assert_relative_eq!(l.re, 2.0, epsilon = 1e-14);
        assert_relative_eq!(l.im, 0.0, epsilon = 1e-14);

        let bad = ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(-0.5, 0.1)]);
        assert!(matches!(log_det_right_halfplane(bad.as_dmatrix()), Err(Error::Branch { .. })));
    }

    #[test]
    fn log_det_matches_determinant_on_rotation_like_input() {
        // eigenvalues 1 ± 0.5i: the per-eigenvalue logs sum to a real number
        let m = real(&[&[1.0, -0.5], &[0.5, 1.0]]);
        let l = log_det_right_halfplane(m.as_dmatrix()).unwrap();
        assert_relative_eq!(l.re, 1.25f64.ln(), epsilon = 1e-14);
        assert!(l.im.abs() < 1e-15);
    }

    #[test]
    fn hermitian_parts_recombine() {
        let m = DMatrix::from_fn(3, 3, |i, j| c(i as f64 - j as f64 * 0.5, (i * j) as f64 * 0.25 + 0.1));
        let (re, im) = hermitian_parts(&m);
        let back = re.as_dmatrix() + im.as_dmatrix() * c(0.0, 1.0);
        assert!(max_abs_diff_raw(&back, &m) < 1e-15);
    }

    #[test]
    fn inverse_sqrt_squares_to_inverse() {
        let h = HermitianMatrix::new(real(&[&[4.0, 1.0], &[1.0, 3.0]])).unwrap();
        let t = inverse_sqrt_hpd(&h).unwrap();
        let prod = t.as_dmatrix() * h.as_dmatrix() * t.as_dmatrix();
        assert!(max_abs_diff_raw(&prod, &DMatrix::identity(2, 2)) < 1e-13);
    }
}
