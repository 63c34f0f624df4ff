// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Hamiltonian is not Hermitian at t = {t} (defect {defect:.3e})")]
    NonHermitian { t: f64, defect: f64 },

    #[error("degenerate flux bias Φ/Φ₀ = {0}: qubit frequency vanishes")]
    DegenerateFlux(f64),

    #[error("flux derivative undefined at Φ/Φ₀ = {0}")]
    DerivativeUndefined(f64),

    #[error("resonant detuning: effective model requires Δ ≠ 0")]
    Resonance,

    #[error("time {t} outside loop interval [-{tau}, {tau}]")]
    OutsideLoop { t: f64, tau: f64 },

    #[error("control angles undefined for an all-zero Rabi triple")]
    UndefinedAngles,

    #[error("invalid loop specification: {0}")]
    InvalidSpec(String),

    #[error("input unitary degraded: defect {0:.3e} exceeds 1e-6")]
    DegradedInput(f64),

    #[error("configuration error: {0}")]
    Configuration(String),
}
