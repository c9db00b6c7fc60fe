//! α-permanents, immanants and characters of the symmetric group, block
//! expansions, and the series `det(I - XA)^{-α} = Σ_m x^m/m! per_α(A[m])`.

mod character;
mod exponent;
mod macmahon;
mod partition;
mod permanent;

pub use character::{character, CharacterTable};
pub use exponent::{exponent_admissible, ExponentSet, FIRST_NATURAL};
pub use macmahon::{macmahon_closed_form, macmahon_partial_sum, macmahon_partial_sums, rising_factorial};
pub use partition::{cycle_count, partitions, CycleType, MultiIndex, Partition, Permutation};
pub use permanent::{
    alpha_permanent, alpha_permanent_with_cap, block_alpha_permanent, block_expand, block_expand_with_cap,
    immanant, immanant_coefficient, per_via_immanants, permanent, ryser_permanent, selection_factorization_check, ClassSums,
    DEFAULT_CAP,
};
