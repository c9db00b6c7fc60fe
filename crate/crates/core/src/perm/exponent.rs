//! Exponent sets for which `det(I - A^*B)^{-α}` is claimed positive definite.
//!
//! `D_R = {-(m+1)} ∪ {(m+1)/2} ∪ {0}` and `D_C = {±(m+1)} ∪ {0}` over `m ∈ ℕ`,
//! each extended by the continuous range `α > n - 1`.

use crate::Field;

/// Smallest element of ℕ in the set definitions. With 0, `1/2 ∈ D_R` and `±1 ∈ D_C`.
pub const FIRST_NATURAL: i64 = 0;

/// `D_R` or `D_C` together with the continuous range `(n-1, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExponentSet {
    pub field: Field,
    pub n: usize,
}

impl ExponentSet {
    pub fn new(field: Field, n: usize) -> Self {
        Self { field, n }
    }

    /// Membership in the discrete part only (`D_R` or `D_C`).
    ///
    /// Decided exactly on the binary value of `alpha`: half-integers and
    /// integers are representable, so no tolerance is involved.
    pub fn in_discrete_set(&self, alpha: f64) -> bool {
        if alpha == 0.0 {
            return true;
        }
        let min_index = FIRST_NATURAL + 1;
        match self.field {
            Field::Real => {
                let twice = 2.0 * alpha;
                if alpha < 0.0 {
                    is_integer(alpha) && -alpha >= min_index as f64
                } else {
                    is_integer(twice) && twice >= min_index as f64
                }
            }
            Field::Complex => is_integer(alpha) && alpha.abs() >= min_index as f64,
        }
    }

    pub fn contains(&self, alpha: f64) -> bool {
        self.in_discrete_set(alpha) || alpha > self.n as f64 - 1.0
    }
}

fn is_integer(x: f64) -> bool {
    x.is_finite() && x.fract() == 0.0
}

/// Whether `alpha` lies in `D ∪ (n-1, ∞)` for the given field.
pub fn exponent_admissible(alpha: f64, n: usize, field: Field) -> bool {
    ExponentSet::new(field, n).contains(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_examples() {
        assert!(exponent_admissible(0.5, 2, Field::Real));
        assert!(!exponent_admissible(0.5, 2, Field::Complex));
        assert!(exponent_admissible(1.5, 2, Field::Complex));
    }

    #[test]
    fn discrete_sets() {
        let real = ExponentSet::new(Field::Real, 10);
        for a in [0.0, 0.5, 1.0, 1.5, 7.5, -1.0, -4.0] {
            assert!(real.in_discrete_set(a), "{a}");
        }
        for a in [0.25, -0.5, -1.5, 0.75, f64::NAN] {
            assert!(!real.in_discrete_set(a), "{a}");
        }
        let complex = ExponentSet::new(Field::Complex, 10);
        for a in [0.0, 1.0, -1.0, 3.0, -7.0] {
            assert!(complex.in_discrete_set(a), "{a}");
        }
        for a in [0.5, -2.5, 1.0000001] {
            assert!(!complex.in_discrete_set(a), "{a}");
        }
    }

    #[test]
    fn continuous_range_is_strict() {
        assert!(!exponent_admissible(2.2, 4, Field::Complex));
        assert!(!exponent_admissible(2.5, 4, Field::Complex));
        assert!(exponent_admissible(3.0000001, 4, Field::Complex));
        assert!(exponent_admissible(2.5, 4, Field::Real));
    }
}
