//! Irreducible characters of the symmetric group by the Murnaghan–Nakayama
//! rule.
//!
//! Border strips are removed on the beta-set (abacus) encoding: removing a
//! strip of length `k` moves one bead from position `b` to the empty position
//! `b - k`, with sign `(-1)^(beads strictly between)`.

use std::collections::HashMap;

use super::partition::{partitions, CycleType, Partition};
use crate::error::{Error, Result};

type Memo = HashMap<(Vec<usize>, Vec<usize>), i64>;

/// `χ_λ(ρ)`, the character of the irreducible indexed by `λ` on the class `ρ`.
pub fn character(lambda: &Partition, rho: &CycleType) -> Result<i64> {
    if lambda.n() != rho.n() {
        return Err(Error::validation(format!(
            "partition {lambda} and cycle type {:?} partition different integers",
            rho.lengths()
        )));
    }
    Ok(murnaghan_nakayama(lambda.parts(), rho.lengths(), &mut Memo::new()))
}

fn murnaghan_nakayama(lambda: &[usize], rho: &[usize], memo: &mut Memo) -> i64 {
    let Some((&strip, rest)) = rho.split_first() else {
        return i64::from(lambda.is_empty());
    };
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }

    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < strip || beta.contains(&(b - strip)) {
            continue;
        }
        let target = b - strip;
        // beta is strictly decreasing; beads strictly between target and b
        let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if crossed % 2 == 0 { 1 } else { -1 };

        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let reduced: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        total += sign * murnaghan_nakayama(&reduced, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// The full character table of `S_n`, rows indexed by `λ`, columns by cycle type,
/// both in reverse-lexicographic order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    irreps: Vec<Partition>,
    classes: Vec<CycleType>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        let irreps = partitions(n);
        let classes: Vec<CycleType> = irreps.iter().cloned().map(CycleType::from).collect();
        let mut memo = Memo::new();
        let values = irreps
            .iter()
            .map(|l| classes.iter().map(|r| murnaghan_nakayama(l.parts(), r.lengths(), &mut memo)).collect())
            .collect();
        Self { n, irreps, classes, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn irreps(&self) -> &[Partition] {
        &self.irreps
    }

    pub fn classes(&self) -> &[CycleType] {
        &self.classes
    }

    /// Row of characters for the `i`-th irreducible.
    pub fn row(&self, i: usize) -> &[i64] {
        &self.values[i]
    }

    pub fn value(&self, lambda: &Partition, rho: &CycleType) -> Option<i64> {
        let i = self.irreps.iter().position(|p| p == lambda)?;
        let j = self.classes.iter().position(|c| c == rho)?;
        Some(self.values[i][j])
    }

    pub fn class_index(&self, rho: &CycleType) -> Option<usize> {
        self.classes.iter().position(|c| c == rho)
    }
}
