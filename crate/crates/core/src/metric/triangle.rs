//! Sampled triangle inequality and symmetry checks.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{delta_p_sq, hua_distance_sq, s_divergence};
use crate::error::{Error, Result};
use crate::matrix::{as_contraction, ComplexMatrix, HermitianMatrix};
use crate::parallel::with_workers;
use crate::sampling::{gaussian_matrix, random_contraction, random_hpd, substream};
use crate::Field;

/// Which distance to sample, on `n × n` complex matrices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "metric", rename_all = "kebab-case")]
pub enum TriangleMetric {
    /// `d` on strict contractions.
    Hua { n: usize },
    /// `δ_S` on positive definite matrices.
    SDivergence { n: usize },
    /// `δ_p` on arbitrary matrices.
    DeltaP { n: usize, p: f64 },
}

impl TriangleMetric {
    pub fn order(&self) -> usize {
        match *self {
            TriangleMetric::Hua { n } | TriangleMetric::SDivergence { n } | TriangleMetric::DeltaP { n, .. } => n,
        }
    }

    /// Draws one point of the metric's domain.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> ComplexMatrix {
        match *self {
            TriangleMetric::Hua { n } => random_contraction(rng, n, Field::Complex).into_matrix(),
            TriangleMetric::SDivergence { n } => random_hpd(rng, n, Field::Complex).matrix().clone(),
            TriangleMetric::DeltaP { n, .. } => ComplexMatrix::wrap(gaussian_matrix(rng, n, n, Field::Complex)),
        }
    }

    /// Squared distance, validating that both points lie in the domain.
    pub fn distance_sq(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
        let value = match *self {
            TriangleMetric::Hua { .. } => {
                let margin = crate::matrix::DEFAULT_MARGIN;
                hua_distance_sq(&as_contraction(a.clone(), margin)?, &as_contraction(b.clone(), margin)?)?
            }
            TriangleMetric::SDivergence { .. } => {
                s_divergence(&HermitianMatrix::new(a.clone())?, &HermitianMatrix::new(b.clone())?)?
            }
            TriangleMetric::DeltaP { p, .. } => delta_p_sq(a, b, p)?,
        };
        Ok(value.squared)
    }
}

/// Worst triangle gap, asymmetry, and smallest squared distance over one triple.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TripleGaps {
    /// `max dist(u,v) - dist(u,w) - dist(w,v)` over the three choices of `w`.
    pub violation: f64,
    /// `max |dist²(u,v) - dist²(v,u)|`.
    pub asymmetry: f64,
    pub min_squared: f64,
}

pub fn triple_gaps(metric: &TriangleMetric, points: [&ComplexMatrix; 3]) -> Result<TripleGaps> {
    let mut sq = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                sq[i][j] = metric.distance_sq(points[i], points[j])?;
            }
        }
    }
    let d = |i: usize, j: usize| sq[i][j].sqrt();
    let mut gaps = TripleGaps { violation: f64::NEG_INFINITY, asymmetry: 0.0, min_squared: f64::INFINITY };
    for (u, v, w) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        gaps.violation = gaps.violation.max(d(u, v) - d(u, w) - d(w, v));
        gaps.asymmetry = gaps.asymmetry.max((sq[u][v] - sq[v][u]).abs());
        gaps.min_squared = gaps.min_squared.min(sq[u][v]).min(sq[v][u]);
    }
    Ok(gaps)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TriangleReport {
    pub metric: TriangleMetric,
    pub count: u64,
    pub worst_violation: f64,
    pub worst_asymmetry: f64,
    pub min_squared: f64,
}

/// Samples `count` triples, triple `t` from substream `(seed, t)`, and reduces with `max`/`min`.
pub fn triangle_suite(metric: TriangleMetric, seed: u64, count: u64, workers: Option<usize>) -> Result<TriangleReport> {
    if count == 0 {
        return Err(Error::validation("triangle suite needs at least one triple"));
    }
    if metric.order() == 0 {
        return Err(Error::validation("matrix order must be positive"));
    }
    let gaps = with_workers(workers, || {
        (0..count)
            .into_par_iter()
            .map(|t| {
                let mut rng = substream(seed, t);
                let [a, b, c] = [0, 1, 2].map(|_| metric.sample(&mut rng));
                triple_gaps(&metric, [&a, &b, &c])
            })
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(TriangleReport {
        metric,
        count,
        worst_violation: gaps.iter().map(|g| g.violation).fold(f64::NEG_INFINITY, f64::max),
        worst_asymmetry: gaps.iter().map(|g| g.asymmetry).fold(0.0, f64::max),
        min_squared: gaps.iter().map(|g| g.min_squared).fold(f64::INFINITY, f64::min),
    })
}
