//! Hua-Bellman Gram matrices `H_α = [det(I - A_i^*A_j)^{-α}]`, positive
//! definiteness reports, Hua's block identity, and the six-matrix instance on
//! which `H_{1/2}` is indefinite.

mod search;

use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::matrix::{
    as_contraction, hermitian_eigen, inverse, log_det_hpd, log_det_right_halfplane, relative_residual, symmetrize,
    ComplexMatrix, Contraction, HermitianMatrix, C64, DEFAULT_MARGIN,
};
use crate::Field;

pub use search::{counterexample_search, SearchConfig, SearchOrigin, SearchOutcome};

/// Relative tolerance used for the PSD verdicts of the identity checks.
pub const PSD_REL_TOL: f64 = 1e-10;

/// Integer matrices of the instance, each rescaled to operator norm 1/2 before use.
pub const BELLMAN_COUNTEREXAMPLE: [[[i32; 2]; 2]; 6] = [
    [[-2, -9], [-5, -10]],
    [[9, -5], [9, 6]],
    [[-10, -3], [-6, 3]],
    [[-8, -8], [1, -10]],
    [[-2, 1], [-6, -1]],
    [[-1, 3], [10, -6]],
];

/// Operator norm the instance matrices are scaled to.
pub const BELLMAN_COUNTEREXAMPLE_NORM: f64 = 0.5;

/// Exponent of the instance.
pub const BELLMAN_COUNTEREXAMPLE_ALPHA: f64 = 0.5;

/// Threshold below which a minimum eigenvalue counts as a violation.
pub const COUNTEREXAMPLE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::PositiveDefinite => "positive-definite",
            Verdict::PositiveSemidefinite => "positive-semidefinite",
            Verdict::Indefinite => "indefinite",
        })
    }
}

/// Minimum eigenvalue and definiteness verdict for a Hermitian matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PDReport {
    pub min_eigenvalue: f64,
    /// Absolute threshold applied: the relative tolerance times the trace.
    pub tolerance: f64,
    pub verdict: Verdict,
    /// SHA-256 prefix over the shape and entry bits.
    pub fingerprint: String,
}

impl PDReport {
    pub fn is_psd(&self) -> bool {
        self.verdict != Verdict::Indefinite
    }
}

/// Verdict from the minimum eigenvalue against `±rel_tol · trace(H)`.
pub fn pd_check(h: &HermitianMatrix, rel_tol: f64) -> Result<PDReport> {
    let eig = hermitian_eigen(h)?;
    let tolerance = rel_tol * h.trace().abs();
    let min_eigenvalue = eig.min();
    let verdict = if min_eigenvalue > tolerance {
        Verdict::PositiveDefinite
    } else if min_eigenvalue >= -tolerance {
        Verdict::PositiveSemidefinite
    } else {
        Verdict::Indefinite
    };
    Ok(PDReport { min_eigenvalue, tolerance, verdict, fingerprint: fingerprint(h.as_dmatrix()) })
}

pub fn fingerprint(m: &DMatrix<C64>) -> String {
    let mut hasher = Sha256::new();
    hasher.update((m.nrows() as u64).to_le_bytes());
    hasher.update((m.ncols() as u64).to_le_bytes());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            hasher.update(m[(i, j)].re.to_le_bytes());
            hasher.update(m[(i, j)].im.to_le_bytes());
        }
    }
    hasher.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// `H_α` together with the family that generated it.
#[derive(Clone, Debug)]
pub struct HuaBellmanMatrix {
    gram: HermitianMatrix,
    alpha: f64,
    source: Vec<Contraction>,
    field: Field,
}

impl HuaBellmanMatrix {
    pub fn gram(&self) -> &HermitianMatrix {
        &self.gram
    }

    pub fn size(&self) -> usize {
        self.source.len()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn source(&self) -> &[Contraction] {
        &self.source
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn pd_check(&self, rel_tol: f64) -> Result<PDReport> {
        pd_check(&self.gram, rel_tol)
    }
}

fn common_order(matrices: &[Contraction]) -> Result<usize> {
    let first = matrices.first().ok_or_else(|| Error::validation("need at least one matrix"))?;
    let n = first.order();
    if let Some(bad) = matrices.iter().find(|a| a.order() != n) {
        return Err(Error::DimensionMismatch { expected: format!("{n}x{n}"), found: format!("{0}x{0}", bad.order()) });
    }
    Ok(n)
}

/// Builds `[det(I - A_i^*A_j)^{-α}]` (plain transpose when `field` is real).
///
/// Entries are `exp(-α Σ Log λ_k(I - A_i^*A_j))`; only the upper triangle is
/// evaluated and mirrored, so the result is exactly Hermitian.
pub fn build_hua_bellman(matrices: &[Contraction], alpha: f64, field: Field) -> Result<HuaBellmanMatrix> {
    let n = common_order(matrices)?;
    if field == Field::Real && !matrices.iter().all(|a| a.is_real()) {
        return Err(Error::validation("real field requested for complex matrices"));
    }
    let m = matrices.len();
    let identity = DMatrix::<C64>::identity(n, n);
    let mut h = DMatrix::<C64>::zeros(m, m);
    for i in 0..m {
        let ai_adj = matrices[i].adjoint();
        for j in i..m {
            let log_det = log_det_right_halfplane(&(&identity - ai_adj.as_dmatrix() * matrices[j].as_dmatrix()))?;
            let mut entry = (-alpha * log_det).exp();
            if i == j || field == Field::Real {
                if entry.im.abs() > 1e-10 * (1.0 + entry.norm()) {
                    return Err(Error::InvariantViolation(format!(
                        "det(I - A_{i}^T A_{j})^(-α) should be real, got {entry}"
                    )));
                }
                entry.im = 0.0;
            }
            h[(i, j)] = entry;
            h[(j, i)] = entry.conj();
        }
    }
    let gram = HermitianMatrix::new(ComplexMatrix::new(h)?)?;
    Ok(HuaBellmanMatrix { gram, alpha, source: matrices.to_vec(), field })
}

/// `[det(I - (A_i^T A_j)_s)^{-α}]`, the entrywise minorant obtained by
/// symmetrizing each product. Requires real matrices.
pub fn symmetrized_hua_bellman(matrices: &[Contraction], alpha: f64) -> Result<HermitianMatrix> {
    let n = common_order(matrices)?;
    if !matrices.iter().all(|a| a.is_real()) {
        return Err(Error::validation("symmetrized kernel is defined for real matrices"));
    }
    let m = matrices.len();
    let identity = ComplexMatrix::identity(n);
    let mut h = DMatrix::<C64>::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let product = ComplexMatrix::wrap(matrices[i].transpose().as_dmatrix() * matrices[j].as_dmatrix());
            let sym = symmetrize(&product)?;
            let shifted = HermitianMatrix::new(ComplexMatrix::wrap(identity.as_dmatrix() - sym.as_dmatrix()))?;
            let entry = C64::new((-alpha * log_det_hpd(&shifted)?).exp(), 0.0);
            h[(i, j)] = entry;
            h[(j, i)] = entry;
        }
    }
    HermitianMatrix::new(ComplexMatrix::new(h)?)
}

/// Relative residual of Hua's identity
/// `I - B^*B + (A-B)^*(I-AA^*)^{-1}(A-B) = (I-B^*A)(I-A^*A)^{-1}(I-A^*B)`.
pub fn hua_identity_residual(a: &Contraction, b: &Contraction) -> Result<f64> {
    common_order(&[a.clone(), b.clone()])?;
    let n = a.order();
    let (a, b) = (a.as_dmatrix(), b.as_dmatrix());
    let identity = DMatrix::<C64>::identity(n, n);
    let diff = a - b;
    let lhs = &identity - b.adjoint() * b + diff.adjoint() * inverse(&(&identity - a * a.adjoint()))? * &diff;
    let rhs = (&identity - b.adjoint() * a) * inverse(&(&identity - a.adjoint() * a))? * (&identity - a.adjoint() * b);
    Ok(relative_residual(&lhs, &rhs))
}

/// PD report for `[[(I-A^*A)^{-1}, (I-A^*B)^{-1}], [(I-B^*A)^{-1}, (I-B^*B)^{-1}]]`.
pub fn hua_block_psd(a: &Contraction, b: &Contraction) -> Result<PDReport> {
    pd_check(&hua_block_matrix(a, b)?, PSD_REL_TOL)
}

pub fn hua_block_matrix(a: &Contraction, b: &Contraction) -> Result<HermitianMatrix> {
    common_order(&[a.clone(), b.clone()])?;
    let n = a.order();
    let identity = DMatrix::<C64>::identity(n, n);
    let inv = |x: &Contraction, y: &Contraction| inverse(&(&identity - x.adjoint().as_dmatrix() * y.as_dmatrix()));
    let mut block = DMatrix::<C64>::zeros(2 * n, 2 * n);
    block.view_mut((0, 0), (n, n)).copy_from(&inv(a, a)?);
    block.view_mut((0, n), (n, n)).copy_from(&inv(a, b)?);
    block.view_mut((n, 0), (n, n)).copy_from(&inv(b, a)?);
    block.view_mut((n, n), (n, n)).copy_from(&inv(b, b)?);
    Ok(HermitianMatrix::from_hermitian_part(&block))
}

/// Both sides of `det(I - A^T B) ≥ det(I - (A^T B)_s)` for real contractions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OstrowskiCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn ostrowski_check(a: &Contraction, b: &Contraction) -> Result<OstrowskiCheck> {
    let n = common_order(&[a.clone(), b.clone()])?;
    if !a.is_real() || !b.is_real() {
        return Err(Error::validation("the determinant inequality is checked on real matrices"));
    }
    let identity = DMatrix::<C64>::identity(n, n);
    let product = ComplexMatrix::wrap(a.transpose().as_dmatrix() * b.as_dmatrix());
    let lhs = (&identity - product.as_dmatrix()).determinant().re;
    let rhs = (&identity - symmetrize(&product)?.as_dmatrix()).determinant().re;
    Ok(OstrowskiCheck { lhs, rhs, holds: lhs >= rhs - 1e-12 })
}

/// A family of contractions whose `H_α` has a negative eigenvalue.
#[derive(Clone, Debug)]
pub struct CounterexampleRecord {
    pub matrices: Vec<Contraction>,
    pub alpha: f64,
    pub min_eigenvalue: f64,
    pub tolerance: f64,
    /// Seed and trial index for search results; `None` for the fixed instance.
    pub origin: Option<SearchOrigin>,
}

/// Rescales an integer matrix to operator norm `target`.
pub fn scaled_integer_matrix(entries: &[Vec<i64>], target: f64) -> Result<Contraction> {
    let rows: Vec<Vec<f64>> = entries.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
    let m = ComplexMatrix::from_real_rows(&rows)?;
    let scaled = crate::sampling::scale_to_norm(&m, target).ok_or_else(|| Error::validation("zero matrix cannot be rescaled"))?;
    as_contraction(scaled, DEFAULT_MARGIN.min((1.0 - target) / 2.0))
}

/// The six instance matrices, each scaled to operator norm 1/2.
pub fn bellman_counterexample_matrices() -> Vec<Contraction> {
    BELLMAN_COUNTEREXAMPLE
        .iter()
        .map(|m| {
            let rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&v| i64::from(v)).collect()).collect();
            scaled_integer_matrix(&rows, BELLMAN_COUNTEREXAMPLE_NORM).expect("fixed nonzero integer matrices")
        })
        .collect()
}

/// Rebuilds `H_{1/2}` for the six-matrix instance and reports its minimum eigenvalue.
pub fn bellman_counterexample_replay() -> Result<CounterexampleRecord> {
    let matrices = bellman_counterexample_matrices();
    let h = build_hua_bellman(&matrices, BELLMAN_COUNTEREXAMPLE_ALPHA, Field::Real)?;
    let min_eigenvalue = hermitian_eigen(h.gram())?.min();
    Ok(CounterexampleRecord {
        matrices,
        alpha: BELLMAN_COUNTEREXAMPLE_ALPHA,
        min_eigenvalue,
        tolerance: COUNTEREXAMPLE_TOL,
        origin: None,
    })
}
