// SPDX-License-Identifier: Apache-2.0

//! Noncommutative dark-state holonomy in a three-transmon circuit-QED tripod.
//!
//! * [`device`]: flux-tunable transmon frequencies, couplings and drive
//!   amplitudes, and the one-excitation Hamiltonian.
//! * [`tripod`]: the effective tripod coupling, control loops C1/C2 and the
//!   dark frame.
//! * [`holonomy`]: the dark-subspace connection, path-ordered loop unitaries
//!   and the population difference between loop orders.
//! * [`dynamics`]: direct time evolution used to validate the holonomy and the
//!   rotating-wave reduction.
//! * [`numerics`]: small dense complex linear algebra and time stepping.

pub mod device;
pub mod dynamics;
pub mod error;
pub mod holonomy;
pub mod numerics;
pub mod tripod;

pub use error::{Error, Result};
