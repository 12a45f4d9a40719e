//! Harmonic slices: kernels of `Delta`, series bases, singular vectors, the
//! irreducibility conditions and the reports that cross-check them.

pub mod blocks;
pub mod kernel;
pub mod laws;
pub mod predicate;
pub mod singular;
pub mod suite;

pub use blocks::{blocks, max_cells, set_max_cells, weight_space, BlockSet, WeightBlock};
pub use kernel::{harmonic_kernel, joint_kernel, kappa, xu_basis, HarmonicBasis, Method};
pub use laws::{eta_scalar, even_singular_closed_form, fermionic_law_check, scalar_law_check};
pub use predicate::{decomposition_hypothesis, irreducibility_predicate, PredicateValue, Theorem};
pub use singular::{is_singular, singular_vectors, SingularVectorSet};
pub use suite::{
    cross_check_irreducibility, cross_check_irreducibility_with, decomposition_report, eta_power_independence,
    label_grid, remark_witness, xu_kernel_agreement, theorem_suite, theorem_suite_with, Predicate,
};
