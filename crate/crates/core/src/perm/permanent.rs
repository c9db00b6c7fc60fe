//! α-permanents and immanants by exact permutation enumeration, plus the block
//! expansion `A[m]` and a counting recursion for α-permanents of block matrices.
//!
//! Enumeration builds each permutation cycle by cycle: the current cycle is
//! either extended to an unvisited element or closed back to its start, and a
//! closed cycle opens the next one at the smallest unvisited element. Every
//! permutation is reached exactly once and its cycle type is known at the leaf
//! without a separate cycle decomposition.

use std::collections::HashMap;

use nalgebra::DMatrix;

use super::character::CharacterTable;
use super::partition::{CycleType, MultiIndex, Partition};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Contraction, C64};

/// Largest order enumerated by default (10! ≈ 3.6M permutations).
pub const DEFAULT_CAP: usize = 10;

/// Limit on the number of memoised states in [`block_alpha_permanent`].
const MAX_BLOCK_STATES: usize = 50_000_000;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

fn check_order(a: &ComplexMatrix, cap: usize) -> Result<usize> {
    let n = if a.is_empty() { 0 } else { a.require_square("matrix")? };
    if n > cap {
        return Err(Error::Capacity { order: n, cap });
    }
    Ok(n)
}

struct CycleWalk<'a, F> {
    a: &'a DMatrix<C64>,
    n: usize,
    visited: Vec<bool>,
    /// `counts[k]` = number of closed cycles of length `k`.
    counts: Vec<u8>,
    leaf: F,
}

impl<F: FnMut(&[u8], usize, C64)> CycleWalk<'_, F> {
    fn step(&mut self, start: usize, cur: usize, cycle_len: usize, seen: usize, prod: C64, cycles: usize) {
        let closed = prod * self.a[(cur, start)];
        if closed != ZERO {
            self.counts[cycle_len] += 1;
            if seen == self.n {
                (self.leaf)(&self.counts, cycles + 1, closed);
            } else {
                let next = self.visited.iter().position(|&v| !v).expect("unvisited element");
                self.visited[next] = true;
                self.step(next, next, 1, seen + 1, closed, cycles + 1);
                self.visited[next] = false;
            }
            self.counts[cycle_len] -= 1;
        }
        for j in 0..self.n {
            if self.visited[j] {
                continue;
            }
            let p = prod * self.a[(cur, j)];
            if p == ZERO {
                continue;
            }
            self.visited[j] = true;
            self.step(start, j, cycle_len + 1, seen + 1, p, cycles);
            self.visited[j] = false;
        }
    }
}

/// Visits every permutation with a nonzero product `Π a_{i,σ(i)}`.
fn walk_permutations(a: &DMatrix<C64>, leaf: impl FnMut(&[u8], usize, C64)) {
    let n = a.nrows();
    let mut walk = CycleWalk { a, n, visited: vec![false; n], counts: vec![0; n + 1], leaf };
    if n == 0 {
        (walk.leaf)(&walk.counts, 0, ONE);
        return;
    }
    walk.visited[0] = true;
    walk.step(0, 0, 1, 1, ONE, 0);
}

/// `S_k = Σ_{σ : #σ = k} Π a_{i,σ(i)}` for `k = 0..=n`.
fn cycle_count_sums(a: &DMatrix<C64>) -> Vec<C64> {
    let mut sums = vec![ZERO; a.nrows() + 1];
    walk_permutations(a, |_, cycles, prod| sums[cycles] += prod);
    sums
}

/// Products `Π a_{i,σ(i)}` summed over each conjugacy class of `S_n`.
#[derive(Clone, Debug)]
pub struct ClassSums {
    n: usize,
    sums: Vec<(CycleType, C64)>,
}

impl ClassSums {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        Self::with_cap(a, DEFAULT_CAP)
    }

    pub fn with_cap(a: &ComplexMatrix, cap: usize) -> Result<Self> {
        let n = check_order(a, cap)?;
        // counts[k] <= n <= 15 fits a nibble; lengths 1..=n index the nibbles
        assert!(n < 16, "class packing supports n < 16");
        let mut packed: HashMap<u64, C64> = HashMap::new();
        walk_permutations(a.as_dmatrix(), |counts, _, prod| {
            let key = counts
                .iter()
                .enumerate()
                .skip(1)
                .fold(0u64, |acc, (k, &c)| acc | (u64::from(c) << (4 * (k - 1))));
            *packed.entry(key).or_insert(ZERO) += prod;
        });
        let mut sums: Vec<(CycleType, C64)> = packed
            .into_iter()
            .map(|(key, s)| {
                let lengths = (1..=n)
                    .flat_map(|k| std::iter::repeat_n(k, ((key >> (4 * (k - 1))) & 0xF) as usize))
                    .collect();
                (CycleType::new(lengths), s)
            })
            .collect();
        sums.sort_by(|x, y| y.0.cmp(&x.0));
        Ok(Self { n, sums })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Classes with a nonzero sum, reverse-lexicographic.
    pub fn iter(&self) -> impl Iterator<Item = &(CycleType, C64)> {
        self.sums.iter()
    }

    pub fn get(&self, rho: &CycleType) -> C64 {
        self.sums.iter().find(|(c, _)| c == rho).map_or(ZERO, |(_, s)| *s)
    }

    fn immanant(&self, table: &CharacterTable, row: usize) -> C64 {
        let chars = table.row(row);
        self.sums
            .iter()
            .map(|(rho, s)| {
                let j = table.class_index(rho).expect("class present in table");
                *s * chars[j] as f64
            })
            .sum()
    }
}

/// `per_α(A) = Σ_σ α^{#σ} Π a_{i,σ(i)}`, enumerating all `n!` permutations.
///
/// The 0x0 matrix has `per_α = 1`.
pub fn alpha_permanent(a: &ComplexMatrix, alpha: C64) -> Result<C64> {
    alpha_permanent_with_cap(a, alpha, DEFAULT_CAP)
}

pub fn alpha_permanent_with_cap(a: &ComplexMatrix, alpha: C64, cap: usize) -> Result<C64> {
    check_order(a, cap)?;
    let sums = cycle_count_sums(a.as_dmatrix());
    // Horner in α over the cycle-count sums
    finite(sums.iter().rev().fold(ZERO, |acc, &s| acc * alpha + s), "α-permanent")
}

fn finite(z: C64, what: &str) -> Result<C64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::numerical(format!("{what} overflowed to {z}")))
    }
}

/// The ordinary permanent, `per_1`.
pub fn permanent(a: &ComplexMatrix) -> Result<C64> {
    alpha_permanent(a, ONE)
}

/// The permanent by Ryser's inclusion-exclusion formula, `O(2^n n)` with Gray-code updates.
pub fn ryser_permanent(a: &ComplexMatrix) -> Result<C64> {
    let n = a.require_square("permanent input")?;
    if n == 0 {
        return Ok(ONE);
    }
    if n > 30 {
        return Err(Error::Capacity { order: n, cap: 30 });
    }
    let mut row_sums = vec![ZERO; n];
    let mut total = ZERO;
    let mut gray = 0u64;
    for k in 1u64..(1 << n) {
        let next = k ^ (k >> 1);
        let col = (next ^ gray).trailing_zeros() as usize;
        let sign = if next & (1 << col) != 0 { 1.0 } else { -1.0 };
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s += a[(i, col)] * sign;
        }
        gray = next;
        let term: C64 = row_sums.iter().product();
        if next.count_ones() % 2 == n as u32 % 2 {
            total += term;
        } else {
            total -= term;
        }
    }
    finite(total, "permanent")
}

/// `d_λ(A) = Σ_σ χ_λ(σ) Π a_{i,σ(i)}`.
pub fn immanant(a: &ComplexMatrix, lambda: &Partition) -> Result<C64> {
    let n = check_order(a, DEFAULT_CAP)?;
    if lambda.n() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("partition of {n}"),
            found: format!("partition {lambda} of {}", lambda.n()),
        });
    }
    let sums = ClassSums::new(a)?;
    let table = CharacterTable::new(n);
    let row = table.irreps().iter().position(|p| p == lambda).expect("λ ⊢ n");
    finite(sums.immanant(&table, row), "immanant")
}

/// `c_λ^α = (1/n!) Σ_σ α^{#σ} χ_λ(σ)`, summed over classes weighted by `n!/z_ρ`.
pub fn immanant_coefficient(lambda: &Partition, alpha: C64) -> C64 {
    let table = CharacterTable::new(lambda.n());
    let row = table.irreps().iter().position(|p| p == lambda).expect("λ ⊢ n");
    coefficient_from_table(&table, row, alpha)
}

fn coefficient_from_table(table: &CharacterTable, row: usize, alpha: C64) -> C64 {
    table
        .classes()
        .iter()
        .zip(table.row(row))
        .map(|(rho, &chi)| alpha.powu(rho.cycles() as u32) * (chi as f64 / rho.centralizer_order() as f64))
        .sum()
}

/// `per_α(A)` assembled as `Σ_λ c_λ^α d_λ(A)`.
pub fn per_via_immanants(a: &ComplexMatrix, alpha: C64) -> Result<C64> {
    let n = check_order(a, DEFAULT_CAP)?;
    let sums = ClassSums::new(a)?;
    let table = CharacterTable::new(n);
    let value = (0..table.irreps().len())
        .map(|row| coefficient_from_table(&table, row, alpha) * sums.immanant(&table, row))
        .sum();
    finite(value, "α-permanent")
}

/// `A[m]`: entry `(i, j)` of `A` replaced by the `m_i × m_j` constant block `a_ij`.
pub fn block_expand(a: &ComplexMatrix, m: &MultiIndex) -> Result<ComplexMatrix> {
    block_expand_with_cap(a, m, DEFAULT_CAP)
}

pub fn block_expand_with_cap(a: &ComplexMatrix, m: &MultiIndex, cap: usize) -> Result<ComplexMatrix> {
    let n = a.require_square("block expansion input")?;
    if m.len() != n {
        return Err(Error::DimensionMismatch { expected: format!("{n} components"), found: format!("{}", m.len()) });
    }
    let size = m.total();
    if size > cap {
        return Err(Error::Capacity { order: size, cap });
    }
    let labels = block_labels(m);
    if size == 0 {
        return Ok(ComplexMatrix::empty());
    }
    Ok(ComplexMatrix::wrap(DMatrix::from_fn(size, size, |r, c| a[(labels[r], labels[c])])))
}

/// Block index of each row of `A[m]`.
fn block_labels(m: &MultiIndex) -> Vec<usize> {
    m.components().iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect()
}

/// `per_α(A[m])` without forming `A[m]` or enumerating `|m|!` permutations.
///
/// Follows the same cycle-by-cycle construction as the enumerator, but only
/// tracks how many unvisited rows remain in each block; rows within a block
/// are interchangeable, so a state is (remaining counts, block of the cycle
/// start, block of the current row).
pub fn block_alpha_permanent(a: &ComplexMatrix, m: &MultiIndex, alpha: C64) -> Result<C64> {
    let n = a.require_square("block expansion input")?;
    if m.len() != n {
        return Err(Error::DimensionMismatch { expected: format!("{n} components"), found: format!("{}", m.len()) });
    }
    let Some(first) = m.components().iter().position(|&k| k > 0) else {
        return Ok(ONE);
    };

    let mut strides = vec![0usize; n];
    let mut radix_total = 1usize;
    for (i, &k) in m.components().iter().enumerate() {
        strides[i] = radix_total;
        radix_total = radix_total
            .checked_mul(k + 1)
            .filter(|&t| t.saturating_mul(n * n) <= MAX_BLOCK_STATES)
            .ok_or(Error::Capacity { order: m.total(), cap: MAX_BLOCK_STATES })?;
    }

    let mut solver = BlockSolver {
        a: a.as_dmatrix(),
        n,
        alpha,
        strides,
        memo: vec![None; radix_total * n * n],
    };
    let mut remaining = m.components().to_vec();
    remaining[first] -= 1;
    finite(solver.solve(&mut remaining, first, first), "block α-permanent")
}

struct BlockSolver<'a> {
    a: &'a DMatrix<C64>,
    n: usize,
    alpha: C64,
    strides: Vec<usize>,
    memo: Vec<Option<C64>>,
}

impl BlockSolver<'_> {
    fn solve(&mut self, remaining: &mut [usize], start: usize, cur: usize) -> C64 {
        let r_index: usize = remaining.iter().zip(&self.strides).map(|(r, s)| r * s).sum();
        let key = (r_index * self.n + start) * self.n + cur;
        if let Some(v) = self.memo[key] {
            return v;
        }

        let close_weight = self.a[(cur, start)] * self.alpha;
        let mut total = ZERO;
        if close_weight != ZERO {
            total += match remaining.iter().position(|&k| k > 0) {
                None => close_weight,
                Some(next) => {
                    remaining[next] -= 1;
                    let rest = self.solve(remaining, next, next);
                    remaining[next] += 1;
                    close_weight * rest
                }
            };
        }
        for k in 0..self.n {
            let count = remaining[k];
            if count == 0 || self.a[(cur, k)] == ZERO {
                continue;
            }
            remaining[k] -= 1;
            let rest = self.solve(remaining, start, k);
            remaining[k] += 1;
            total += self.a[(cur, k)] * count as f64 * rest;
        }
        self.memo[key] = Some(total);
        total
    }
}

/// Max-entry deviation between `(A^*B)[m]` and its two selection-matrix forms
/// `Q_m^*(A^*B ⊗ 11^T)Q_m` and `Ã_m^* B̃_m` with `Ã_m = (A ⊗ 1^T) Q_m`.
pub fn selection_factorization_check(a: &Contraction, b: &Contraction, m: &MultiIndex) -> Result<f64> {
    let n = a.order();
    if b.order() != n {
        return Err(Error::DimensionMismatch { expected: format!("{n}x{n}"), found: format!("{0}x{0}", b.order()) });
    }
    let gram = ComplexMatrix::wrap(a.adjoint().as_dmatrix() * b.as_dmatrix());
    let expanded = block_expand(&gram, m)?;
    let size = m.total();
    if size == 0 {
        return Ok(0.0);
    }

    // Q_m = Diag(U_1, ..., U_n), U_i selecting the rows of block i of E = 11^T.
    let labels = block_labels(m);
    let mut q = DMatrix::<C64>::zeros(n * size, size);
    for (col, &block) in labels.iter().enumerate() {
        q[(block * size + col, col)] = ONE;
    }
    let ones_row = DMatrix::<C64>::from_element(1, size, ONE);
    let e = DMatrix::<C64>::from_element(size, size, ONE);

    let via_kron = q.adjoint() * gram.as_dmatrix().kronecker(&e) * &q;
    let a_tilde = a.as_dmatrix().kronecker(&ones_row) * &q;
    let b_tilde = b.as_dmatrix().kronecker(&ones_row) * &q;
    let via_factors = a_tilde.adjoint() * b_tilde;

    let target = expanded.as_dmatrix();
    let scale = 1.0 + crate::matrix::max_abs(target);
    let r1 = crate::matrix::max_abs_diff_raw(&via_kron, target);
    let r2 = crate::matrix::max_abs_diff_raw(&via_factors, target);
    Ok(r1.max(r2) / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{as_contraction, DEFAULT_MARGIN};
    use approx::assert_relative_eq;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn one_by_one() {
        let a = ComplexMatrix::from_rows(&[vec![C64::new(2.0, -1.0)]]).unwrap();
        let alpha = C64::new(0.3, 0.7);
        assert_eq!(alpha_permanent(&a, alpha).unwrap(), alpha * a[(0, 0)]);
        assert_relative_eq!((per_via_immanants(&a, alpha).unwrap() - alpha * a[(0, 0)]).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn small_hand_values() {
        assert_eq!(alpha_permanent(&real(&[&[1.0, 1.0], &[1.0, 1.0]]), c(1.0)).unwrap(), c(2.0));
        // identity: (-1)^2·4 = 4, swap: (-1)^1·6 = -6
        assert_eq!(alpha_permanent(&real(&[&[1.0, 2.0], &[3.0, 4.0]]), c(-1.0)).unwrap(), c(-2.0));
    }

    #[test]
    fn ryser_matches_enumeration() {
        let a = ComplexMatrix::from_rows(&[
            vec![C64::new(1.0, 2.0), C64::new(-0.5, 0.0), C64::new(0.3, -1.0)],
            vec![C64::new(0.0, 1.0), C64::new(2.0, 0.5), C64::new(-1.0, 0.0)],
            vec![C64::new(0.7, 0.0), C64::new(0.2, 0.2), C64::new(1.5, -0.3)],
        ])
        .unwrap();
        assert_relative_eq!((ryser_permanent(&a).unwrap() - permanent(&a).unwrap()).norm(), 0.0, epsilon = 1e-12);
        assert_eq!(ryser_permanent(&real(&[&[1.0, 1.0], &[1.0, 1.0]])).unwrap(), c(2.0));
        assert_eq!(ryser_permanent(&ComplexMatrix::empty()).unwrap(), c(1.0));
    }

    #[test]
    fn empty_matrix_is_one() {
        assert_eq!(alpha_permanent(&ComplexMatrix::empty(), c(3.0)).unwrap(), c(1.0));
    }

    #[test]
    fn capacity_error() {
        let big = ComplexMatrix::identity(11);
        assert!(matches!(alpha_permanent(&big, c(1.0)), Err(Error::Capacity { order: 11, cap: 10 })));
        assert!(alpha_permanent_with_cap(&big, c(1.0), 11).is_ok());
    }

    #[test]
    fn immanant_examples() {
        let id = ComplexMatrix::identity(3);
        assert_eq!(immanant(&id, &Partition::new(vec![2, 1]).unwrap()).unwrap(), c(2.0));
        let a = real(&[&[1.0, 2.0, 0.5], &[-1.0, 3.0, 2.0], &[0.0, 1.0, 4.0]]);
        let det = a.as_dmatrix().determinant();
        assert_relative_eq!((immanant(&a, &Partition::column(3)).unwrap() - det).norm(), 0.0, epsilon = 1e-12);
        let per = permanent(&a).unwrap();
        assert_relative_eq!((immanant(&a, &Partition::row(3)).unwrap() - per).norm(), 0.0, epsilon = 1e-12);
        assert!(immanant(&a, &Partition::row(2)).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let alpha = C64::new(-0.4, 1.1);
        assert_eq!(immanant_coefficient(&Partition::row(1), alpha), alpha);
        for n in 1..=6 {
            for lambda in crate::perm::partitions(n) {
                let expected = if lambda == Partition::row(n) { c(1.0) } else { c(0.0) };
                assert_relative_eq!((immanant_coefficient(&lambda, c(1.0)) - expected).norm(), 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn class_sums_cover_all_permutations() {
        let ones = ComplexMatrix::wrap(DMatrix::from_element(5, 5, c(1.0)));
        let sums = ClassSums::new(&ones).unwrap();
        for (rho, s) in sums.iter() {
            assert_eq!(s.re, rho.class_size() as f64);
        }
    }

    #[test]
    fn block_expand_examples() {
        let a = real(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(block_expand(&a, &MultiIndex::ones(2)).unwrap(), a);
        let scalar = real(&[&[1.5]]);
        let expanded = block_expand(&scalar, &MultiIndex::new(vec![3])).unwrap();
        assert_eq!(expanded, ComplexMatrix::wrap(DMatrix::from_element(3, 3, c(1.5))));
        assert!(block_expand(&a, &MultiIndex::new(vec![0, 0])).unwrap().is_empty());
        let e = block_expand(&a, &MultiIndex::new(vec![0, 2])).unwrap();
        assert_eq!(e, ComplexMatrix::wrap(DMatrix::from_element(2, 2, c(4.0))));
        assert!(block_expand(&a, &MultiIndex::new(vec![6, 5])).is_err());
    }

    #[test]
    fn block_recursion_matches_enumeration() {
        let a = ComplexMatrix::from_rows(&[
            vec![C64::new(0.3, 0.1), C64::new(-0.7, 0.2), C64::new(0.5, 0.0)],
            vec![C64::new(0.2, -0.4), C64::new(0.9, 0.3), C64::new(-0.1, 0.6)],
            vec![C64::new(-0.8, 0.0), C64::new(0.4, 0.4), C64::new(0.6, -0.2)],
        ])
        .unwrap();
        let alpha = C64::new(1.7, -0.3);
        for m in MultiIndex::graded(3, 6) {
            let direct = alpha_permanent(&block_expand(&a, &m).unwrap(), alpha).unwrap();
            let fast = block_alpha_permanent(&a, &m, alpha).unwrap();
            assert!((direct - fast).norm() <= 1e-12 * (1.0 + direct.norm()), "{m:?}: {direct} vs {fast}");
        }
    }

    #[test]
    fn selection_factorization_examples() {
        let a = as_contraction(real(&[&[0.3, -0.2], &[0.1, 0.4]]), DEFAULT_MARGIN).unwrap();
        let b = as_contraction(real(&[&[-0.5, 0.1], &[0.2, 0.2]]), DEFAULT_MARGIN).unwrap();
        assert_eq!(selection_factorization_check(&a, &b, &MultiIndex::ones(2)).unwrap(), 0.0);
        assert!(selection_factorization_check(&a, &b, &MultiIndex::new(vec![2, 1])).unwrap() <= 1e-12);
        assert_eq!(selection_factorization_check(&a, &b, &MultiIndex::new(vec![0, 3])).unwrap(), 0.0);
    }
}
