//! Integer partitions, cycle types, permutations, and multi-indices.

use std::fmt;

use crate::error::{Error, Result};

/// An integer partition `λ ⊢ n`: positive parts in non-increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::validation("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::validation(format!("partition parts must be non-increasing: {parts:?}")));
        }
        Ok(Self { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// `[n]`, indexing the trivial representation.
    pub fn row(n: usize) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// `[1, ..., 1]`, indexing the sign representation.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect();
        Self { parts }
    }

    /// Dimension of the irreducible representation, by the hook length formula.
    pub fn dimension(&self) -> u128 {
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks *= (row - j + conj.parts[j] - i - 1) as u128;
            }
        }
        factorial_u128(self.n()) / hooks
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order (`[n]` first).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn extend(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            extend(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    out
}

/// Cycle lengths of a permutation, as a partition of `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Partition);

impl CycleType {
    pub fn new(lengths: Vec<usize>) -> Self {
        Self(Partition::from_unsorted(lengths))
    }

    pub fn identity(n: usize) -> Self {
        Self(Partition::column(n))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn lengths(&self) -> &[usize] {
        self.0.parts()
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    /// `#σ`, the number of disjoint cycles.
    pub fn cycles(&self) -> usize {
        self.0.len()
    }

    /// `(-1)^(n - #σ)`.
    pub fn sign(&self) -> i64 {
        if (self.n() - self.cycles()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Order of the centralizer, `z_ρ = Π_k k^{c_k} c_k!`.
    pub fn centralizer_order(&self) -> u128 {
        let mut z: u128 = 1;
        let lengths = self.lengths();
        let mut i = 0;
        while i < lengths.len() {
            let k = lengths[i];
            let count = lengths[i..].iter().take_while(|&&l| l == k).count();
            z *= (k as u128).pow(count as u32) * factorial_u128(count);
            i += count;
        }
        z
    }

    /// Number of permutations with this cycle type, `n!/z_ρ`.
    pub fn class_size(&self) -> u128 {
        factorial_u128(self.n()) / self.centralizer_order()
    }
}

impl From<Partition> for CycleType {
    fn from(p: Partition) -> Self {
        Self(p)
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType{:?}", self.0.parts())
    }
}

/// A bijection on `{0, ..., n-1}`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::validation(format!("not a permutation: {images:?}")));
            }
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lengths.push(len);
        }
        CycleType::new(lengths)
    }
}

/// Number of disjoint cycles of a permutation given as a 0-based image list.
pub fn cycle_count(images: &[usize]) -> Result<usize> {
    Ok(Permutation::new(images.to_vec())?.cycle_type().cycles())
}

/// A multi-index `m ∈ ℕ^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        Self(components)
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|m| = Σ m_j`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `m! = Π m_j!` as a float (exact while it stays below 2^53).
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&k| factorial_u128(k) as f64).product()
    }

    /// All multi-indices of length `n` with `|m| = degree`, lexicographically descending.
    pub fn with_total(n: usize, degree: usize) -> Vec<MultiIndex> {
        fn fill(slot: usize, remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if slot + 1 == cur.len() {
                cur[slot] = remaining;
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for k in (0..=remaining).rev() {
                cur[slot] = k;
                fill(slot + 1, remaining - k, cur, out);
            }
        }
        if n == 0 {
            return if degree == 0 { vec![MultiIndex(Vec::new())] } else { Vec::new() };
        }
        let mut out = Vec::new();
        fill(0, degree, &mut vec![0; n], &mut out);
        out
    }

    /// All multi-indices with `|m| ≤ max_total`, grouped by increasing total degree.
    pub fn graded(n: usize, max_total: usize) -> Vec<MultiIndex> {
        (0..=max_total).flat_map(|d| Self::with_total(n, d)).collect()
    }
}

pub(crate) fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![2, 1]).is_ok());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn partitions_of_small_n() {
        let p3: Vec<Vec<usize>> = partitions(3).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(p3, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(1), vec![Partition::row(1)]);
        // p(n) for n = 1..10
        let counts: Vec<usize> = (1..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn partitions_are_distinct_and_sum_to_n() {
        for n in 1..=8 {
            let ps = partitions(n);
            assert!(ps.iter().all(|p| p.n() == n));
            assert!(ps.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(cycle_count(&[0, 1, 2, 3]).unwrap(), 4);
        assert_eq!(cycle_count(&[1, 2, 3, 4, 0]).unwrap(), 1);
        assert_eq!(cycle_count(&[1, 0, 2]).unwrap(), 2);
        assert!(cycle_count(&[0, 0, 1]).is_err());
        assert!(cycle_count(&[0, 3]).is_err());
    }

    #[test]
    fn hook_length_dimensions() {
        assert_eq!(Partition::new(vec![2, 1]).unwrap().dimension(), 2);
        assert_eq!(Partition::new(vec![3, 2]).unwrap().dimension(), 5);
        assert_eq!(Partition::row(6).dimension(), 1);
        // Σ dim² = n!
        for n in 1..=8 {
            let total: u128 = partitions(n).iter().map(|p| p.dimension().pow(2)).sum();
            assert_eq!(total, factorial_u128(n));
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=9 {
            let total: u128 = partitions(n).into_iter().map(|p| CycleType::from(p).class_size()).sum();
            assert_eq!(total, factorial_u128(n));
        }
    }

    #[test]
    fn multi_index_basics() {
        let m = MultiIndex::new(vec![2, 0, 3]);
        assert_eq!(m.total(), 5);
        assert_eq!(m.factorial(), 12.0);
        assert_eq!(MultiIndex::with_total(2, 2).len(), 3);
        assert_eq!(MultiIndex::graded(3, 2).len(), 10);
        assert_eq!(MultiIndex::graded(2, 0), vec![MultiIndex::new(vec![0, 0])]);
    }
}
