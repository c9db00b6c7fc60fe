//! Alpha-permanents, Hua-Bellman kernel matrices, and a log-determinant
//! distance on strict contractions.
//!
//! The crate is organised around five pieces:
//!
//! * [`matrix`]: complex matrices, strict contractions, and spectral helpers.
//! * [`perm`]: α-permanents, immanants, symmetric-group characters, block
//!   expansions `A[m]`, and truncations of `det(I - XA)^{-α}` as a series of
//!   α-permanents.
//! * [`kernel`]: Gram matrices `[det(I - A_i^*A_j)^{-α}]`, positive
//!   definiteness reports, the six-matrix instance where the half-integer
//!   exponent fails, and a seeded search for more such instances.
//! * [`metric`]: `d²(A,B) = log |det(I-A^*B)| / √(det(I-A^*A) det(I-B^*B))`, the
//!   S-divergence, `δ_p`, the Möbius reduction, and the checks behind the
//!   triangle inequality.
//! * [`verify`] and [`cli`]: property suites and the `huabell` binary.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example` lists them.
//!
//! ```
//! use huabell::kernel::bellman_counterexample_replay;
//!
//! let record = bellman_counterexample_replay().unwrap();
//! assert!((record.min_eigenvalue + 1.2066e-3).abs() < 1e-7);
//! ```

pub mod cli;
pub mod error;
pub mod kernel;
pub mod matrix;
pub mod metric;
pub mod parallel;
pub mod perm;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, Contraction, HermitianMatrix, C64};

use serde::{Deserialize, Serialize};

/// Scalar field of a family of matrices: real (plain transpose) or complex
/// (conjugate transpose).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Field::Real => "real",
            Field::Complex => "complex",
        })
    }
}
