// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra and time stepping for 2- and 4-level systems.

mod eigen;
mod expm;
mod matrix;
mod propagate;

pub use eigen::HermitianEigen;
pub use expm::{exp_hermitian, mat_exp};
pub use matrix::{pauli, unitarity_defect, ComplexMatrix, Matrix2, Matrix4, StateVector, C64, I, ONE, ZERO};
pub use propagate::{propagate, propagator, HERMITICITY_TOL};
