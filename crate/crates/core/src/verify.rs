//! Seeded property suites. Each check reduces a sampled quantity to its worst
//! value and compares it with a fixed tolerance.

use std::fmt;

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::kernel::{
    bellman_counterexample_replay, build_hua_bellman, hua_block_psd, hua_identity_residual, ostrowski_check,
    symmetrized_hua_bellman,
};
use crate::matrix::{hermitian_eigen, singular_values, ComplexMatrix, Contraction, C64};
use crate::metric::{
    concavity_profile, decomposition_check, delta_p_sq, hua_distance_sq, majorization_chain, mobius_transform,
    relative_gap, triangle_suite, uchiyama_check, TriangleMetric,
};
use crate::parallel::with_workers;
use crate::perm::{
    alpha_permanent, block_alpha_permanent, exponent_admissible, macmahon_closed_form, macmahon_partial_sums,
    per_via_immanants, ryser_permanent, selection_factorization_check, MultiIndex,
};
use crate::sampling::{gaussian_matrix, random_contraction, random_unitary, substream};
use crate::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Pd,
    Metric,
    Majorization,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Identities => "identities",
            Suite::Pd => "pd",
            Suite::Metric => "metric",
            Suite::Majorization => "majorization",
            Suite::All => "all",
        })
    }
}

/// How `worst` is compared with `tolerance`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    /// Passes when `worst ≤ tolerance`.
    AtMost,
    /// Passes when `worst > tolerance`.
    Above,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub samples: u64,
    pub worst: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub passed: bool,
    /// Report-only checks never fail their suite.
    pub assertive: bool,
}

impl CheckResult {
    pub fn at_most(name: impl Into<String>, samples: u64, worst: f64, tolerance: f64) -> Self {
        Self { name: name.into(), samples, worst, tolerance, bound: Bound::AtMost, passed: worst <= tolerance, assertive: true }
    }

    pub fn above(name: impl Into<String>, samples: u64, worst: f64, tolerance: f64) -> Self {
        Self { name: name.into(), samples, worst, tolerance, bound: Bound::Above, passed: worst > tolerance, assertive: true }
    }

    pub fn report_only(mut self) -> Self {
        self.assertive = false;
        self
    }

    pub fn failed(&self) -> bool {
        self.assertive && !self.passed
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| !c.failed());
        Self { suite, checks, passed }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.failed())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub count: u64,
    pub workers: Option<usize>,
    /// Extra exponent for the `pd` suite; asserted only where admissible.
    pub alpha: Option<f64>,
    pub field: Field,
}

impl VerifyConfig {
    pub fn new(seed: u64, count: u64) -> Self {
        Self { seed, count, workers: None, alpha: None, field: Field::Complex }
    }
}

/// Generator for sample `t` of the check tagged `tag`.
fn stream(seed: u64, tag: u64, t: u64) -> ChaCha8Rng {
    substream(seed, (tag << 40) | t)
}

/// `max_t f(t)` over `count` samples in parallel; `-∞` when `count = 0`.
fn sampled_max(seed: u64, tag: u64, count: u64, f: impl Fn(&mut ChaCha8Rng, u64) -> Result<f64> + Sync) -> Result<f64> {
    let values = (0..count)
        .into_par_iter()
        .map(|t| f(&mut stream(seed, tag, t), t))
        .collect::<Result<Vec<f64>>>()?;
    Ok(values.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

fn alternating_order(t: u64) -> usize {
    2 + (t % 2) as usize
}

fn contraction_pair(rng: &mut ChaCha8Rng, n: usize, field: Field) -> (Contraction, Contraction) {
    (random_contraction(rng, n, field), random_contraction(rng, n, field))
}

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::wrap(gaussian_matrix(rng, n, n, Field::Complex))
}

fn rel_err(a: C64, b: C64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Multi-index with `|m|` uniform in `0..=max_total`, units spread uniformly over blocks.
pub fn random_multi_index<R: Rng>(rng: &mut R, n: usize, max_total: usize) -> MultiIndex {
    let total = rng.random_range(0..=max_total);
    let mut parts = vec![0; n];
    for _ in 0..total {
        parts[rng.random_range(0..n)] += 1;
    }
    MultiIndex::new(parts)
}

/// The series instance: `A = [[1,2],[2,5]]`, `x ∝ (1, 1/20)` scaled so `‖XA‖ = 0.3`.
pub fn reference_series_instance() -> (ComplexMatrix, Vec<C64>) {
    let a = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 5.0]]).expect("fixed matrix");
    let direction = [1.0, 0.05];
    let xa = DMatrix::from_fn(2, 2, |i, j| a[(i, j)] * direction[i]);
    let scale = 0.3 / singular_values(&xa)[0];
    (a, direction.iter().map(|&d| C64::new(d * scale, 0.0)).collect())
}

/// Absolute truncation errors `|S_k - det(I - XA)^{-α}|` for `k = 0..=order`.
pub fn series_errors(a: &ComplexMatrix, x: &[C64], alpha: f64, order: usize) -> Result<Vec<f64>> {
    let alpha = C64::new(alpha, 0.0);
    let exact = macmahon_closed_form(a, x, alpha)?;
    Ok(macmahon_partial_sums(a, x, alpha, order)?.into_iter().map(|s| (s - exact).norm()).collect())
}

pub const SERIES_ALPHAS: [f64; 3] = [0.5, 1.5, 3.0];
pub const SERIES_ORDER: usize = 12;
pub const IMMANANT_ALPHAS: [f64; 5] = [-2.0, -1.0, 0.5, 1.0, 2.7];

/// Per-class exponents: `(label, field, alphas)`; the continuous class is drawn per sample.
pub const COMPLEX_EXPONENTS: [f64; 3] = [1.0, 2.0, 3.0];
pub const REAL_EXPONENTS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

/// Exponent class used by the kernel and nonnegativity suites.
#[derive(Clone, Copy, Debug)]
pub enum ExponentClass {
    Fixed(f64, Field),
    /// Uniform in `(n-1, n+2]`, complex matrices.
    AboveThreshold,
}

impl ExponentClass {
    pub fn all() -> Vec<ExponentClass> {
        COMPLEX_EXPONENTS
            .iter()
            .map(|&a| ExponentClass::Fixed(a, Field::Complex))
            .chain(REAL_EXPONENTS.iter().map(|&a| ExponentClass::Fixed(a, Field::Real)))
            .chain([ExponentClass::AboveThreshold])
            .collect()
    }

    pub fn label(&self) -> String {
        match self {
            ExponentClass::Fixed(a, f) => format!("{f} alpha={a}"),
            ExponentClass::AboveThreshold => "complex alpha in (n-1, n+2]".to_string(),
        }
    }

    fn draw<R: Rng>(&self, rng: &mut R, n: usize) -> (f64, Field) {
        match *self {
            ExponentClass::Fixed(a, f) => (a, f),
            ExponentClass::AboveThreshold => {
                // (n-1, n+2] as n+2 - [0, 3)
                (n as f64 + 2.0 - rng.random_range(0.0..3.0), Field::Complex)
            }
        }
    }
}

/// `max(-λ_min / trace)` of `H_α` over random families of `family` contractions, `n` alternating 2 and 3.
pub fn kernel_property(class: ExponentClass, family: usize, seed: u64, tag: u64, count: u64) -> Result<f64> {
    sampled_max(seed, tag, count, |rng, t| {
        let n = alternating_order(t);
        let (alpha, field) = class.draw(rng, n);
        let mats: Vec<Contraction> = (0..family).map(|_| random_contraction(rng, n, field)).collect();
        let h = build_hua_bellman(&mats, alpha, field)?;
        Ok(-hermitian_eigen(h.gram())?.min() / h.gram().trace())
    })
}

/// `max(-Re per_α((A^*A)[m]) / per_|α|(|A^*A|[m]))` over all `|m| ≤ max_total`.
pub fn nonnegativity_property(class: ExponentClass, max_total: usize, seed: u64, tag: u64, count: u64) -> Result<f64> {
    sampled_max(seed, tag, count, |rng, t| {
        let n = alternating_order(t);
        let (alpha, field) = class.draw(rng, n);
        let a = ComplexMatrix::wrap(gaussian_matrix(rng, n, n, field).unscale((n as f64).sqrt()));
        let gram = ComplexMatrix::wrap(a.adjoint().as_dmatrix() * a.as_dmatrix());
        let magnitude = ComplexMatrix::wrap(gram.as_dmatrix().map(|z| C64::new(z.norm(), 0.0)));
        let mut worst = f64::NEG_INFINITY;
        for m in MultiIndex::graded(n, max_total) {
            let value = block_alpha_permanent(&gram, &m, C64::new(alpha, 0.0))?;
            let scale = block_alpha_permanent(&magnitude, &m, C64::new(alpha.abs(), 0.0))?.re;
            worst = worst.max(-value.re / scale.max(f64::MIN_POSITIVE));
        }
        Ok(worst)
    })
}

pub fn identities_suite(seed: u64, count: u64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let hua = sampled_max(seed, 1, count, |rng, t| {
        let (a, b) = contraction_pair(rng, alternating_order(t), Field::Complex);
        hua_identity_residual(&a, &b)
    })?;
    checks.push(CheckResult::at_most("hua identity residual", count, hua, 1e-10));

    let block = sampled_max(seed, 2, count, |rng, t| {
        let (a, b) = contraction_pair(rng, alternating_order(t), Field::Complex);
        let report = hua_block_psd(&a, &b)?;
        let trace = crate::kernel::hua_block_matrix(&a, &b)?.trace();
        Ok(-report.min_eigenvalue / trace)
    })?;
    checks.push(CheckResult::at_most("hua block matrix -min eigenvalue / trace", count, block, 1e-10));

    let ostrowski = sampled_max(seed, 3, count, |rng, t| {
        let (a, b) = contraction_pair(rng, alternating_order(t), Field::Real);
        let c = ostrowski_check(&a, &b)?;
        Ok(c.rhs - c.lhs)
    })?;
    checks.push(CheckResult::at_most("det(I - A^T B) >= det(I - (A^T B)_s): rhs - lhs", count, ostrowski, 1e-12));

    let hua_ineq = sampled_max(seed, 4, count, |rng, t| {
        let n = alternating_order(t);
        let (a, b) = contraction_pair(rng, n, Field::Complex);
        let id = DMatrix::<C64>::identity(n, n);
        let det = |x: &Contraction, y: &Contraction| (&id - x.adjoint().as_dmatrix() * y.as_dmatrix()).determinant();
        Ok(det(&a, &a).re * det(&b, &b).re - det(&a, &b).norm_sqr())
    })?;
    checks.push(CheckResult::at_most("det(I-A*A)det(I-B*B) - |det(I-A*B)|^2", count, hua_ineq, 1e-12));

    let endpoints = sampled_max(seed, 5, count, |rng, _| {
        let n = rng.random_range(1..=6);
        let a = gaussian(rng, n);
        let per = rel_err(alpha_permanent(&a, C64::new(1.0, 0.0))?, ryser_permanent(&a)?);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let det = rel_err(alpha_permanent(&a, C64::new(-1.0, 0.0))?, a.as_dmatrix().determinant() * sign);
        Ok(per.max(det))
    })?;
    checks.push(CheckResult::at_most("per_1 = per, per_-1 = (-1)^n det (relative)", count, endpoints, 1e-9));

    let immanants = sampled_max(seed, 6, count, |rng, _| {
        let n = rng.random_range(2..=5);
        let a = gaussian(rng, n);
        let mut worst: f64 = 0.0;
        for alpha in IMMANANT_ALPHAS {
            let alpha = C64::new(alpha, 0.0);
            worst = worst.max(rel_err(per_via_immanants(&a, alpha)?, alpha_permanent(&a, alpha)?));
        }
        Ok(worst)
    })?;
    checks.push(CheckResult::at_most("immanant expansion of per_alpha (relative)", count, immanants, 1e-9));

    let factorization = sampled_max(seed, 7, count, |rng, t| {
        let n = alternating_order(t);
        let (a, b) = contraction_pair(rng, n, Field::Complex);
        selection_factorization_check(&a, &b, &random_multi_index(rng, n, 6))
    })?;
    checks.push(CheckResult::at_most("block expansion factorization residual", count, factorization, 1e-12));

    let (a, x) = reference_series_instance();
    let mut series_worst: f64 = 0.0;
    let mut increases = 0usize;
    for alpha in SERIES_ALPHAS {
        let errors = series_errors(&a, &x, alpha, SERIES_ORDER)?;
        series_worst = series_worst.max(errors[SERIES_ORDER]);
        increases += errors.windows(2).filter(|w| w[1] >= w[0]).count();
    }
    checks.push(CheckResult::at_most("order-12 series truncation error", SERIES_ALPHAS.len() as u64, series_worst, 1e-6));
    checks.push(CheckResult::at_most("non-decreasing steps in truncation error", SERIES_ALPHAS.len() as u64, increases as f64, 0.0));

    let mobius = sampled_max(seed, 8, count, |rng, t| {
        let (a, b) = contraction_pair(rng, alternating_order(t), Field::Complex);
        let pair = mobius_transform(&a, &b)?;
        Ok(pair.residual_product.max(pair.residual_real_part))
    })?;
    checks.push(CheckResult::at_most("Mobius identities residual", count, mobius, 1e-10));
    Ok(SuiteReport::new(Suite::Identities, checks))
}

pub fn pd_suite(seed: u64, count: u64, extra: Option<(f64, Field)>) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for (k, class) in ExponentClass::all().into_iter().enumerate() {
        let worst = kernel_property(class, 5, seed, 100 + k as u64, count)?;
        checks.push(CheckResult::at_most(format!("H_alpha, 5 matrices, {}: -min eigenvalue / trace", class.label()), count, worst, 1e-10));
    }
    for (k, class) in ExponentClass::all().into_iter().enumerate() {
        let worst = nonnegativity_property(class, 6, seed, 200 + k as u64, count)?;
        checks.push(CheckResult::at_most(format!("per_alpha((A*A)[m]), |m| <= 6, {}: -value / scale", class.label()), count, worst, 1e-10));
    }
    if let Some((alpha, field)) = extra {
        let worst = kernel_property(ExponentClass::Fixed(alpha, field), 5, seed, 300, count)?;
        let check = CheckResult::at_most(format!("H_alpha, 5 matrices, {field} alpha={alpha}: -min eigenvalue / trace"), count, worst, 1e-10);
        let admissible = exponent_admissible(alpha, 2, field) && exponent_admissible(alpha, 3, field);
        checks.push(if admissible { check } else { check.report_only() });
    }

    let record = bellman_counterexample_replay()?;
    let h = build_hua_bellman(&record.matrices, record.alpha, Field::Real)?;
    let trace = h.gram().trace();
    checks.push(CheckResult::at_most("six-matrix instance H_1/2: -min eigenvalue / trace", 1, -record.min_eigenvalue / trace, 1e-10).report_only());
    let sym = symmetrized_hua_bellman(&record.matrices, record.alpha)?;
    let sym_worst = -hermitian_eigen(&sym)?.min() / sym.trace();
    checks.push(CheckResult::at_most("six-matrix instance, symmetrized entries: -min eigenvalue / trace", 1, sym_worst, 1e-10));
    Ok(SuiteReport::new(Suite::Pd, checks))
}

pub const DELTA_P_EXPONENTS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

pub fn triangle_metrics() -> Vec<TriangleMetric> {
    let mut metrics = vec![TriangleMetric::Hua { n: 2 }, TriangleMetric::Hua { n: 3 }];
    metrics.extend([TriangleMetric::SDivergence { n: 2 }, TriangleMetric::SDivergence { n: 3 }]);
    metrics.extend(DELTA_P_EXPONENTS.iter().map(|&p| TriangleMetric::DeltaP { n: 3, p }));
    metrics
}

fn metric_label(m: &TriangleMetric) -> String {
    match m {
        TriangleMetric::Hua { n } => format!("d, n={n}"),
        TriangleMetric::SDivergence { n } => format!("delta_S, n={n}"),
        TriangleMetric::DeltaP { n, p } => format!("delta_p, p={p}, n={n}"),
    }
}

pub fn metric_suite(seed: u64, count: u64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for (k, metric) in triangle_metrics().into_iter().enumerate() {
        let report = triangle_suite(metric, seed.wrapping_add(1000 + k as u64), count, None)?;
        let label = metric_label(&metric);
        checks.push(CheckResult::at_most(format!("triangle violation, {label}"), count, report.worst_violation, 1e-10));
        checks.push(CheckResult::at_most(format!("asymmetry of squared distance, {label}"), count, report.worst_asymmetry, 1e-12));
        checks.push(CheckResult::at_most(format!("negated min squared distance, {label}"), count, -report.min_squared, 0.0));
    }

    let chain = (0..count)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, 20, t);
            let (a, b) = contraction_pair(&mut rng, alternating_order(t), Field::Complex);
            let d = hua_distance_sq(&a, &b)?.squared;
            let pair = mobius_transform(&a, &b)?;
            let split = decomposition_check(&pair.x, &pair.y)?;
            let gap = relative_gap(d, split.lhs).max(relative_gap(split.lhs, split.rhs)).max(relative_gap(d, split.rhs));
            let mobius_residual = pair.residual_product.max(pair.residual_real_part);
            Ok((gap, mobius_residual, pair.min_eig_re_x.min(pair.min_eig_re_y)))
        })
        .collect::<Result<Vec<_>>>()?;
    let fold_max = |f: fn(&(f64, f64, f64)) -> f64| chain.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
    checks.push(CheckResult::at_most("d^2 = delta^2 = delta_S^2 + delta_2^2/2 (relative)", count, fold_max(|c| c.0), 1e-9));
    checks.push(CheckResult::at_most("Mobius identities residual", count, fold_max(|c| c.1), 1e-10));
    let min_re = chain.iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
    checks.push(CheckResult::above("min eigenvalue of Re X", count, min_re, 0.0));

    let separated = (0..count)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, 21, t);
            let (a, b) = contraction_pair(&mut rng, alternating_order(t), Field::Complex);
            let gap = singular_values(&(a.as_dmatrix() - b.as_dmatrix()))[0];
            Ok(if gap >= 0.1 { hua_distance_sq(&a, &b)?.value } else { f64::INFINITY })
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    checks.push(CheckResult::above("min d(A,B) over pairs with ||A-B|| >= 0.1", count, separated, 1e-8));

    let invariance = sampled_max(seed, 22, count, |rng, _| {
        let n = 3;
        let (x, y) = (gaussian(rng, n), gaussian(rng, n));
        let (u, v) = (random_unitary(rng, n, Field::Complex), random_unitary(rng, n, Field::Complex));
        let rot = |m: &ComplexMatrix| ComplexMatrix::wrap(&u * m.as_dmatrix() * &v);
        let mut worst: f64 = 0.0;
        for p in DELTA_P_EXPONENTS {
            let before = delta_p_sq(&x, &y, p)?.value;
            let after = delta_p_sq(&rot(&x), &rot(&y), p)?.value;
            worst = worst.max((before - after).abs());
        }
        Ok(worst)
    })?;
    checks.push(CheckResult::at_most("unitary invariance of delta_p", count, invariance, 1e-12));
    Ok(SuiteReport::new(Suite::Metric, checks))
}

pub const UCHIYAMA_EXPONENTS: [f64; 3] = [0.5, 1.0, 2.0];
pub const CONCAVITY_EXPONENTS: [f64; 5] = [0.25, 0.5, 1.0, 1.5, 2.0];

/// 200 log-spaced points on `[0.01, 100]`.
pub fn concavity_grid() -> Vec<f64> {
    (0..200).map(|k| 10f64.powf(-2.0 + 4.0 * k as f64 / 199.0)).collect()
}

pub fn majorization_suite(seed: u64, count: u64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for (k, p) in UCHIYAMA_EXPONENTS.into_iter().enumerate() {
        let failures = sampled_max(seed, 30 + k as u64, count, |rng, t| {
            let n = alternating_order(t);
            Ok(if uchiyama_check(&gaussian(rng, n), &gaussian(rng, n), p)? { 0.0 } else { 1.0 })
        })?;
        checks.push(CheckResult::at_most(format!("Uchiyama weak majorization fails, p={p}"), count, failures.max(0.0), 0.0));
    }

    let chain = (0..count)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, 40, t);
            let n = alternating_order(t);
            let [x, y, z] = [0, 1, 2].map(|_| gaussian(&mut rng, n));
            let mut broken = 0u32;
            let mut gap = f64::NEG_INFINITY;
            for p in UCHIYAMA_EXPONENTS {
                let c = majorization_chain(&x, &y, &z, p)?;
                broken += u32::from(!c.squared_majorized) + u32::from(!c.minkowski);
                gap = gap.max(c.triangle_gap);
            }
            Ok((broken, gap))
        })
        .collect::<Result<Vec<_>>>()?;
    let broken: u32 = chain.iter().map(|c| c.0).sum();
    let gap = chain.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    checks.push(CheckResult::at_most("squaring and Minkowski steps broken", count, f64::from(broken), 0.0));
    checks.push(CheckResult::at_most("delta_p triangle gap along the chain", count, gap, 1e-10));

    let grid = concavity_grid();
    for p in CONCAVITY_EXPONENTS {
        let worst = concavity_profile(p, &grid)?;
        checks.push(CheckResult::at_most(format!("max second difference of sqrt(log(1+t^p)), p={p}"), grid.len() as u64, worst, 1e-8));
    }
    Ok(SuiteReport::new(Suite::Majorization, checks))
}

/// Runs one suite, or all four, on a pool of `cfg.workers` threads.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    if cfg.count == 0 {
        return Err(crate::Error::validation("count must be at least 1"));
    }
    let extra = cfg.alpha.map(|a| (a, cfg.field));
    with_workers(cfg.workers, || -> Result<Vec<SuiteReport>> {
        let selected = match suite {
            Suite::All => vec![Suite::Identities, Suite::Pd, Suite::Metric, Suite::Majorization],
            s => vec![s],
        };
        selected
            .into_iter()
            .map(|s| match s {
                Suite::Identities => identities_suite(cfg.seed, cfg.count),
                Suite::Pd => pd_suite(cfg.seed, cfg.count, extra),
                Suite::Metric => metric_suite(cfg.seed, cfg.count),
                _ => majorization_suite(cfg.seed, cfg.count),
            })
            .collect()
    })?
}
