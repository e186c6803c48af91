//! Symmetric-group machinery: permutations, their operators on tensor
//! product spaces, and exact formal sums such as partial (anti)symmetrizers.

mod group_sum;
mod permutation;
mod realize;

pub use group_sum::{symmetric_projector, FormalGroupSum, ProjectorSign, Rational};
pub(crate) use group_sum::rational_to_f64;
pub use permutation::Permutation;
pub use realize::{basis_map, permutation_trace, realize};
