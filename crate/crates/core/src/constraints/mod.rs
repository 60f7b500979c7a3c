//! The first, second and generalized constraint equations on `H_q ⊗ H_t`,
//! their near-kernels, and measurement statistics restricted to them.
//!
//! A state is physical when `|D psi|` is below a tolerance rather than zero:
//! discretisation detunes exact degeneracies.

mod measurement;
mod operator;
mod separable;
mod subspace;

pub use measurement::{
    measurement_probabilities, uncertainty_product, Measurement, Outcome, Uncertainty,
    MIN_SUBSPACE_WEIGHT,
};
pub use operator::{ConstraintKind, ConstraintOperator, Forcing, DENSE_LIMIT};
pub use separable::{
    first_constraint_residual, generalized_residual, second_constraint_residual, separable_first,
    separable_second,
};
pub use subspace::{generalized_solve, physical_subspace, physical_subspace_factored, SubspaceBasis};

/// Default near-kernel threshold.
pub const DEFAULT_TOL: f64 = 1e-6;
