//! Dense complex linear algebra: Kronecker products, Hermitian
//! eigendecomposition, unitary exponentials and near-null spaces.

mod eigen;
mod expm;
mod kron;
mod matrix;
mod nullspace;

pub use eigen::{eig_hermitian, eigenpairs_where, eigenvalues_hermitian, EigenSystem};
pub(crate) use eigen::fix_phase;
pub use expm::unitary_exp;
pub use kron::{apply_kron, apply_system, apply_time, kron};
pub use matrix::{inner, norm, normalize, Flags, OperatorMatrix, C64, HERMITIAN_TOL, UNITARY_TOL};
pub use nullspace::near_null_space;
