// SPDX-License-Identifier: Apache-2.0

//! Flux-tunable transmons coupled to a single resonator mode.
//!
//! Frequencies are angular, in rad/ns, with ħ = 1. Device energies are given
//! in GHz (i.e. E/h) and converted on the way in.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{Matrix4, C64};

/// Charging energy of the reference device, GHz.
pub const REFERENCE_E_C_GHZ: f64 = 0.3;
/// Maximal Josephson energy of the reference device, GHz.
pub const REFERENCE_E_J_MAX_GHZ: f64 = 15.0;
/// Coupling `g/2π` of the reference device at its working point, GHz.
pub const REFERENCE_COUPLING_GHZ: f64 = 0.1;

/// Below this `E_J/E_C` the transmon approximation is questionable.
const MIN_TRANSMON_RATIO: f64 = 20.0;
/// `|cos(πΦ/Φ₀)|` at or below this is treated as a sweet-spot zero.
const DEGENERATE_COS: f64 = 1e-12;
/// Flux modulation amplitude (units of Φ₀) above which linearization is suspect.
const MAX_LINEAR_FLUX: f64 = 0.05;

pub fn ghz_to_angular(f_ghz: f64) -> f64 {
    2.0 * PI * f_ghz
}

pub fn angular_to_ghz(omega: f64) -> f64 {
    omega / (2.0 * PI)
}

/// Reduced external flux `Φ/Φ₀`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluxBias(pub f64);

impl FluxBias {
    /// `|cos(πΦ/Φ₀)|`, snapped to exactly zero at half-integer flux.
    fn abs_cos(self) -> f64 {
        let c = (PI * self.0).cos().abs();
        if c <= DEGENERATE_COS {
            0.0
        } else {
            c
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransmonParams {
    /// Charging energy `E_C`, GHz.
    pub e_c: f64,
    /// Maximal Josephson energy `E_J,max`, GHz.
    pub e_j_max: f64,
    /// Lumped coupling prefactor, GHz: `g/2π = scale·(E_J,max/8E_C)^¼·|cos|^¼`.
    ///
    /// Absorbs the gate-capacitance ratio, the resonator rms voltage and the
    /// electron charge, none of which enter anywhere else.
    pub coupling_scale: f64,
}

impl TransmonParams {
    pub fn new(e_c: f64, e_j_max: f64, coupling_scale: f64) -> Result<Self> {
        if !(e_c > 0.0 && e_c.is_finite()) {
            return Err(Error::InvalidArgument(format!("E_C must be positive, got {e_c}")));
        }
        if !(e_j_max > 0.0 && e_j_max.is_finite()) {
            return Err(Error::InvalidArgument(format!("E_J,max must be positive, got {e_j_max}")));
        }
        if !(coupling_scale >= 0.0 && coupling_scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("coupling scale must be non-negative, got {coupling_scale}")));
        }
        if e_j_max / e_c < MIN_TRANSMON_RATIO {
            log::warn!("E_J/E_C = {:.1} is outside the transmon regime", e_j_max / e_c);
        }
        Ok(Self { e_c, e_j_max, coupling_scale })
    }

    /// Picks the coupling prefactor so that `g(bias)/2π = coupling_ghz`.
    pub fn calibrated(e_c: f64, e_j_max: f64, coupling_ghz: f64, bias: FluxBias) -> Result<Self> {
        let unit = Self::new(e_c, e_j_max, 1.0)?;
        let per_unit = angular_to_ghz(coupling_strength(&unit, bias)?);
        if per_unit == 0.0 {
            return Err(Error::DegenerateFlux(bias.0));
        }
        Self::new(e_c, e_j_max, coupling_ghz / per_unit)
    }

    /// 0.3 GHz / 15 GHz transmon with `g/2π = 100 MHz` at zero flux.
    pub fn reference() -> Self {
        Self::calibrated(REFERENCE_E_C_GHZ, REFERENCE_E_J_MAX_GHZ, REFERENCE_COUPLING_GHZ, FluxBias(0.0))
            .expect("reference parameters are valid")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CavityParams {
    /// Resonator angular frequency, rad/ns.
    pub omega: f64,
}

impl CavityParams {
    pub fn from_ghz(f_ghz: f64) -> Result<Self> {
        let omega = ghz_to_angular(f_ghz);
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidArgument(format!("cavity frequency must be positive, got {f_ghz} GHz")));
        }
        Ok(Self { omega })
    }
}

/// Qubit splitting `ε(Φ) = √(8·E_C·E_J,max·|cos(πΦ/Φ₀)|)`, rad/ns.
pub fn qubit_frequency(p: &TransmonParams, b: FluxBias) -> Result<f64> {
    let c = b.abs_cos();
    if c == 0.0 {
        return Err(Error::DegenerateFlux(b.0));
    }
    Ok(ghz_to_angular((8.0 * p.e_c * p.e_j_max * c).sqrt()))
}

/// Qubit-resonator coupling `g(Φ)`, rad/ns. Proportional to `√ε(Φ)`.
pub fn coupling_strength(p: &TransmonParams, b: FluxBias) -> Result<f64> {
    if !b.0.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite flux {}", b.0)));
    }
    let ratio = (p.e_j_max / (8.0 * p.e_c)).powf(0.25);
    Ok(ghz_to_angular(p.coupling_scale * ratio * b.abs_cos().powf(0.25)))
}

/// Flux derivatives of the qubit frequency and coupling at a bias point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluxSlopes {
    /// `∂ε/∂(Φ/Φ₀)` = `∂Δ/∂(Φ/Φ₀)`, rad/ns.
    pub d_delta: f64,
    /// `∂g/∂(Φ/Φ₀)`, rad/ns.
    pub d_coupling: f64,
}

pub fn flux_slopes(p: &TransmonParams, b: FluxBias) -> Result<FluxSlopes> {
    if b.abs_cos() == 0.0 {
        return Err(Error::DerivativeUndefined(b.0));
    }
    // d/dx |cos πx|^k = -k·π·tan(πx)·|cos πx|^k
    let tan = (PI * b.0).tan();
    let eps = qubit_frequency(p, b)?;
    let g = coupling_strength(p, b)?;
    Ok(FluxSlopes { d_delta: -0.5 * PI * tan * eps, d_coupling: -0.25 * PI * tan * g })
}

/// Linearized modulation amplitudes `(L, T)` of the detuning and coupling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveAmplitudes {
    pub l: f64,
    pub t: f64,
}

/// Amplitudes of `δΔ` and `δg` produced by a flux modulation of amplitude `f`
/// (units of Φ₀) around `bias`.
pub fn drive_amplitudes(p: &TransmonParams, _cavity: &CavityParams, bias: FluxBias, f: f64) -> Result<DriveAmplitudes> {
    if !f.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite flux amplitude {f}")));
    }
    if f.abs() > MAX_LINEAR_FLUX {
        log::warn!("flux amplitude {f} Φ₀ is outside the linear regime");
    }
    // The resonator frequency is flux independent, so ∂Δ/∂Φ = ∂ε/∂Φ.
    let s = flux_slopes(p, bias)?;
    Ok(DriveAmplitudes { l: s.d_delta * f, t: s.d_coupling * f })
}

/// `η = g⁽⁰⁾/(4ε⁽⁰⁾) − g⁽⁰⁾/(2Δ⁽⁰⁾)`.
pub fn effective_rabi_scale(eps0: f64, g0: f64, delta0: f64) -> Result<f64> {
    if delta0 == 0.0 {
        return Err(Error::Resonance);
    }
    if eps0.is_nan() || eps0 <= 0.0 {
        return Err(Error::InvalidArgument(format!("qubit frequency must be positive, got {eps0}")));
    }
    Ok(g0 / (4.0 * eps0) - g0 / (2.0 * delta0))
}

/// Static operating point of one qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitWorkingPoint {
    pub eps0: f64,
    pub g0: f64,
    pub delta0: f64,
    pub eta: f64,
}

impl QubitWorkingPoint {
    pub fn new(eps0: f64, g0: f64, delta0: f64) -> Result<Self> {
        let eta = effective_rabi_scale(eps0, g0, delta0)?;
        Ok(Self { eps0, g0, delta0, eta })
    }

    pub fn from_device(p: &TransmonParams, cavity: &CavityParams, bias: FluxBias) -> Result<Self> {
        let eps0 = qubit_frequency(p, bias)?;
        let g0 = coupling_strength(p, bias)?;
        Self::new(eps0, g0, eps0 - cavity.omega)
    }
}

/// Dispersive cavity pull `χ = g²/Δ`.
pub fn dispersive_shift(g: f64, delta: f64) -> Result<f64> {
    if delta == 0.0 {
        return Err(Error::Resonance);
    }
    Ok(g * g / delta)
}

/// One-excitation Hamiltonian in the basis `{|1ggg⟩, |0egg⟩, |0geg⟩, |0gge⟩}`,
/// written relative to the resonator frequency.
pub fn build_subspace_hamiltonian(g: [f64; 3], delta: [f64; 3]) -> Matrix4 {
    let mut h = Matrix4::zeros();
    for i in 0..3 {
        h[(0, i + 1)] = C64::new(g[i], 0.0);
        h[(i + 1, 0)] = C64::new(g[i], 0.0);
        h[(i + 1, i + 1)] = C64::new(delta[i], 0.0);
    }
    h
}

/// Time envelope `F(t)` of a flux modulation, in units of Φ₀.
#[derive(Clone)]
pub enum Envelope {
    Constant(f64),
    Shaped(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Envelope {
    pub fn at(&self, t: f64) -> f64 {
        match self {
            Envelope::Constant(f) => *f,
            Envelope::Shaped(f) => f(t),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        match self {
            Envelope::Constant(f) => Envelope::Constant(s * f),
            Envelope::Shaped(f) => {
                let f = Arc::clone(f);
                Envelope::Shaped(Arc::new(move |t| s * f(t)))
            }
        }
    }
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Envelope::Constant(x) => f.debug_tuple("Constant").field(x).finish(),
            Envelope::Shaped(_) => f.write_str("Shaped(..)"),
        }
    }
}

/// Flux modulation `δΦ(t) = F(t)·cos(ω_d·t + φ)`.
#[derive(Clone, Debug)]
pub struct DriveSpec {
    pub envelope: Envelope,
    pub omega_d: f64,
    pub phase: f64,
}
