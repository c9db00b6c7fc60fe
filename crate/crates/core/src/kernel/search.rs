//! Seeded search for integer families whose `H_α` is indefinite.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{build_hua_bellman, scaled_integer_matrix, CounterexampleRecord, COUNTEREXAMPLE_TOL};
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, Contraction};
use crate::parallel::with_workers;
use crate::sampling::substream;
use crate::Field;

/// Where a search record came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOrigin {
    pub seed: u64,
    pub trial: u64,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Number of matrices per family.
    pub count: usize,
    /// Matrix order.
    pub n: usize,
    pub alpha: f64,
    /// Entries are drawn uniformly from `[-entry_bound, entry_bound]`.
    pub entry_bound: i64,
    pub target_norm: f64,
    pub trials: u64,
    pub seed: u64,
    pub tolerance: f64,
    /// Thread count; `None` uses rayon's global pool.
    pub workers: Option<usize>,
    /// Integer family used verbatim as trial 0 instead of a random draw.
    pub injected: Option<Vec<Vec<Vec<i64>>>>,
}

impl SearchConfig {
    pub fn new(count: usize, n: usize, alpha: f64, trials: u64, seed: u64) -> Self {
        Self {
            count,
            n,
            alpha,
            entry_bound: 10,
            target_norm: 0.5,
            trials,
            seed,
            tolerance: COUNTEREXAMPLE_TOL,
            workers: None,
            injected: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.count == 0 || self.n == 0 {
            return Err(Error::validation("family size and matrix order must be positive"));
        }
        if self.entry_bound < 1 {
            return Err(Error::validation("entry bound must be at least 1"));
        }
        if !(self.target_norm > 0.0 && self.target_norm < 1.0) {
            return Err(Error::validation(format!("target norm {} outside (0, 1)", self.target_norm)));
        }
        if !self.alpha.is_finite() || !self.tolerance.is_finite() || self.tolerance < 0.0 {
            return Err(Error::validation("alpha and tolerance must be finite, tolerance nonnegative"));
        }
        if let Some(family) = &self.injected {
            let shape_ok = family.len() == self.count
                && family.iter().all(|m| m.len() == self.n && m.iter().all(|r| r.len() == self.n));
            if !shape_ok {
                return Err(Error::validation(format!("injected family must be {} matrices of order {}", self.count, self.n)));
            }
        }
        Ok(())
    }
}

/// Violating records in trial order, plus `λ_min` of every trial.
#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub records: Vec<CounterexampleRecord>,
    pub min_eigenvalues: Vec<f64>,
}

impl SearchOutcome {
    pub fn min(&self) -> Option<f64> {
        self.min_eigenvalues.iter().copied().reduce(f64::min)
    }

    /// Lower median.
    pub fn median(&self) -> Option<f64> {
        if self.min_eigenvalues.is_empty() {
            return None;
        }
        let mut sorted = self.min_eigenvalues.clone();
        sorted.sort_by(f64::total_cmp);
        Some(sorted[(sorted.len() - 1) / 2])
    }
}

fn draw_integer_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<i64>> {
    loop {
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-bound..=bound)).collect()).collect();
        if m.iter().flatten().any(|&v| v != 0) {
            return m;
        }
    }
}

fn run_trial(cfg: &SearchConfig, trial: u64) -> Result<(f64, Option<CounterexampleRecord>)> {
    let family: Vec<Vec<Vec<i64>>> = match (&cfg.injected, trial) {
        (Some(family), 0) => family.clone(),
        _ => {
            let mut rng = substream(cfg.seed, trial);
            (0..cfg.count).map(|_| draw_integer_matrix(&mut rng, cfg.n, cfg.entry_bound)).collect()
        }
    };
    let matrices = family
        .iter()
        .map(|m| scaled_integer_matrix(m, cfg.target_norm))
        .collect::<Result<Vec<Contraction>>>()?;
    let h = build_hua_bellman(&matrices, cfg.alpha, Field::Real)?;
    let min_eigenvalue = hermitian_eigen(h.gram())?.min();
    let record = (min_eigenvalue < -cfg.tolerance).then_some(CounterexampleRecord {
        matrices,
        alpha: cfg.alpha,
        min_eigenvalue,
        tolerance: cfg.tolerance,
        origin: Some(SearchOrigin { seed: cfg.seed, trial }),
    });
    Ok((min_eigenvalue, record))
}

/// Runs `cfg.trials` independent trials; trial `t` draws from substream `(seed, t)`.
///
/// The outcome does not depend on `cfg.workers`.
pub fn counterexample_search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let results = with_workers(cfg.workers, || {
        (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect::<Result<Vec<_>>>()
    })??;
    let mut outcome = SearchOutcome { records: Vec::new(), min_eigenvalues: Vec::with_capacity(results.len()) };
    for (lambda, record) in results {
        outcome.min_eigenvalues.push(lambda);
        outcome.records.extend(record);
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{bellman_counterexample_replay, BELLMAN_COUNTEREXAMPLE};

    #[test]
    fn zero_trials_is_empty() {
        let outcome = counterexample_search(&SearchConfig::new(8, 2, 0.5, 0, 1)).unwrap();
        assert!(outcome.records.is_empty());
        assert_eq!(outcome.min(), None);
        assert_eq!(outcome.median(), None);
    }

    #[test]
    fn injected_instance_is_recovered() {
        let mut cfg = SearchConfig::new(6, 2, 0.5, 3, 9);
        cfg.injected = Some(
            BELLMAN_COUNTEREXAMPLE.iter().map(|m| m.iter().map(|r| r.iter().map(|&v| i64::from(v)).collect()).collect()).collect(),
        );
        let outcome = counterexample_search(&cfg).unwrap();
        let first = &outcome.records[0];
        assert_eq!(first.origin, Some(SearchOrigin { seed: 9, trial: 0 }));
        assert_eq!(first.min_eigenvalue, bellman_counterexample_replay().unwrap().min_eigenvalue);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let mut cfg = SearchConfig::new(8, 2, 0.5, 400, 7);
        cfg.workers = Some(1);
        let serial = counterexample_search(&cfg).unwrap();
        cfg.workers = Some(3);
        let parallel = counterexample_search(&cfg).unwrap();
        assert_eq!(serial.min_eigenvalues, parallel.min_eigenvalues);
        assert_eq!(serial.records.len(), parallel.records.len());
    }

    #[test]
    fn rejects_bad_parameters() {
        let mut cfg = SearchConfig::new(4, 2, 0.5, 1, 0);
        cfg.target_norm = 1.0;
        assert!(counterexample_search(&cfg).is_err());
        cfg.target_norm = 0.5;
        cfg.injected = Some(vec![vec![vec![1]]]);
        assert!(counterexample_search(&cfg).is_err());
    }
}
