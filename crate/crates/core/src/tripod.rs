// SPDX-License-Identifier: Apache-2.0

//! Effective tripod coupling, the two control loops and their dark states.
//!
//! Basis ordering for all 4-vectors is `{|B⟩, |1⟩, |2⟩, |3⟩}`, where `|B⟩` is
//! the shared (one-photon) state and `|k⟩` has qubit `k` excited.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::numerics::{Matrix4, StateVector, C64, ZERO};

/// Complex Rabi frequencies `(Ω₁, Ω₂, Ω₃)`, rad/ns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RabiTriple(pub [C64; 3]);

impl RabiTriple {
    pub fn real(o1: f64, o2: f64, o3: f64) -> Self {
        Self([C64::new(o1, 0.0), C64::new(o2, 0.0), C64::new(o3, 0.0)])
    }

    /// `Ω = √(Σ|Ωᵢ|²)`.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LoopId {
    C1,
    C2,
}

/// Parameters of one closed control loop over `t ∈ [-τ, τ]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoopSpec {
    pub loop_id: LoopId,
    /// Peak Rabi scale Ω₀, rad/ns.
    pub omega0: f64,
    /// Half-duration τ, ns.
    pub tau: f64,
    /// Amplitude factor on Ω₂ (C2 only).
    pub alpha: f64,
    /// Delay of the Ω₃ pulse in units of τ (C2 only).
    pub beta: f64,
    /// Number of uniform integration steps along the loop.
    pub steps: usize,
}

impl LoopSpec {
    pub fn new(loop_id: LoopId, omega0: f64, tau: f64, alpha: f64, beta: f64, steps: usize) -> Result<Self> {
        let spec = Self { loop_id, omega0, tau, alpha, beta, steps };
        spec.validate()?;
        Ok(spec)
    }

    pub fn c1(omega0: f64, tau: f64, steps: usize) -> Result<Self> {
        Self::new(LoopId::C1, omega0, tau, 1.0, 0.0, steps)
    }

    pub fn c2(omega0: f64, tau: f64, alpha: f64, beta: f64, steps: usize) -> Result<Self> {
        Self::new(LoopId::C2, omega0, tau, alpha, beta, steps)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return bad(format!("tau must be positive, got {}", self.tau));
        }
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return bad(format!("omega0 must be positive, got {}", self.omega0));
        }
        if self.steps < 2 {
            return bad(format!("steps must be at least 2, got {}", self.steps));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return bad(format!("alpha must be positive, got {}", self.alpha));
        }
        if !(0.0..=2.0).contains(&self.beta) {
            return bad(format!("beta must lie in [0, 2], got {}", self.beta));
        }
        Ok(())
    }

    /// Copy with τ and Ω₀ replaced.
    pub fn rescaled(&self, omega0: f64, tau: f64) -> Result<Self> {
        Self::new(self.loop_id, omega0, tau, self.alpha, self.beta, self.steps)
    }

    pub fn with_steps(&self, steps: usize) -> Result<Self> {
        Self::new(self.loop_id, self.omega0, self.tau, self.alpha, self.beta, steps)
    }

    /// Rabi triple at normalized time `s = t/τ ∈ [-1, 1]`.
    pub(crate) fn rabi_at(&self, s: f64) -> RabiTriple {
        let f = envelope(s);
        let xi = PI * s;
        let (o2, shift) = match self.loop_id {
            LoopId::C1 => (f * f, 0.0),
            LoopId::C2 => (f * f + self.aux_at(s) / self.omega0, self.beta),
        };
        let o3 = C64::from_polar((-(s - shift) * (s - shift)).exp(), xi);
        RabiTriple([C64::new(f, 0.0), C64::new(o2, 0.0), o3]).scale(self.omega0)
    }

    /// Auxiliary drive Ω₄ at normalized time `s`; zero on C1.
    pub(crate) fn aux_at(&self, s: f64) -> f64 {
        match self.loop_id {
            LoopId::C1 => 0.0,
            LoopId::C2 => {
                let f = envelope(s);
                (self.alpha - 1.0) * self.omega0 * f * f
            }
        }
    }

    /// Control angles at normalized time `s`, with ξ = πs prescribed.
    pub(crate) fn angles_at(&self, s: f64) -> ControlAngles {
        let r = self.rabi_at(s);
        let [a1, a2, a3] = r.0.map(|z| z.norm());
        ControlAngles { omega_norm: r.norm(), theta: a1.hypot(a2).atan2(a3), phi: a2.atan2(a1), xi: PI * s }
    }

    /// `dφ/ds` along the loop; φ = atan(k·f) with k = 1 on C1 and α on C2.
    pub(crate) fn phi_rate_at(&self, s: f64) -> f64 {
        let k = match self.loop_id {
            LoopId::C1 => 1.0,
            LoopId::C2 => self.alpha,
        };
        let f = envelope(s);
        let df = -FRAC_PI_2 * (FRAC_PI_2 * s).sin();
        k * df / (1.0 + k * k * f * f)
    }

    /// `dξ/ds`.
    pub(crate) fn xi_rate(&self) -> f64 {
        PI
    }

    fn normalized_time(&self, t: f64) -> Result<f64> {
        let s = t / self.tau;
        if !s.is_finite() || s.abs() > 1.0 + 1e-12 {
            return Err(Error::OutsideLoop { t, tau: self.tau });
        }
        Ok(s.clamp(-1.0, 1.0))
    }
}

/// `f(s) = cos(πs/2)`, exactly zero at the loop ends.
fn envelope(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        (FRAC_PI_2 * s).cos()
    }
}

/// Rabi triple of the loop at time `t ∈ [-τ, τ]`.
///
/// On C2 the enhanced Ω₂′ = αΩ₀f² is realized as Ω₀f² plus the auxiliary
/// drive Ω₄ = (α−1)Ω₀f² (see [`loop_aux_drive`]).
pub fn loop_rabi(spec: &LoopSpec, t: f64) -> Result<RabiTriple> {
    spec.validate()?;
    Ok(spec.rabi_at(spec.normalized_time(t)?))
}

/// The auxiliary drive Ω₄(t) that turns C1's Ω₂ into C2's Ω₂′.
pub fn loop_aux_drive(spec: &LoopSpec, t: f64) -> Result<f64> {
    spec.validate()?;
    Ok(spec.aux_at(spec.normalized_time(t)?))
}

/// Control angles along a loop, using the prescribed `ξ = πt/τ`.
pub fn loop_angles(spec: &LoopSpec, t: f64) -> Result<ControlAngles> {
    spec.validate()?;
    Ok(spec.angles_at(spec.normalized_time(t)?))
}

/// Spherical parametrization `(Ω, θ, φ, ξ)` of a Rabi triple.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlAngles {
    pub omega_norm: f64,
    pub theta: f64,
    pub phi: f64,
    pub xi: f64,
}

impl ControlAngles {
    pub fn new(omega_norm: f64, theta: f64, phi: f64, xi: f64) -> Self {
        Self { omega_norm, theta, phi, xi }
    }

    /// `(Ω sinθ cosφ, Ω sinθ sinφ, Ω cosθ e^{iξ})`.
    pub fn rabi_triple(&self) -> RabiTriple {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        let w = self.omega_norm;
        RabiTriple([C64::new(w * st * cp, 0.0), C64::new(w * st * sp, 0.0), C64::from_polar(w * ct, self.xi)])
    }
}

/// Inverts the spherical parametrization of a single triple.
///
/// `ξ = arg Ω₃` in `(-π, π]` (zero when Ω₃ vanishes); use
/// [`control_angles_path`] for a continuously unwrapped phase.
pub fn control_angles(r: &RabiTriple) -> Result<ControlAngles> {
    let omega_norm = r.norm();
    if !omega_norm.is_finite() {
        return Err(Error::InvalidArgument("non-finite Rabi triple".into()));
    }
    if omega_norm == 0.0 {
        return Err(Error::UndefinedAngles);
    }
    let [a1, a2, a3] = r.0.map(|z| z.norm());
    let xi = if a3 == 0.0 { 0.0 } else { r.0[2].arg() };
    Ok(ControlAngles { omega_norm, theta: a1.hypot(a2).atan2(a3), phi: a2.atan2(a1), xi })
}

/// [`control_angles`] over a sampled path, unwrapping ξ so that successive
/// samples never jump by more than π.
pub fn control_angles_path(path: &[RabiTriple]) -> Result<Vec<ControlAngles>> {
    let mut out: Vec<ControlAngles> = Vec::with_capacity(path.len());
    for r in path {
        let mut a = control_angles(r)?;
        if let Some(prev) = out.last() {
            let turns = ((prev.xi - a.xi) / (2.0 * PI)).round();
            a.xi += 2.0 * PI * turns;
        }
        out.push(a);
    }
    Ok(out)
}

/// Tripod coupling: first row `(0, Ω₁, Ω₂, Ω₃)`, first column its conjugate.
pub fn tripod_hamiltonian(r: &RabiTriple) -> Matrix4 {
    let mut h = Matrix4::zeros();
    for (k, &z) in r.0.iter().enumerate() {
        h[(0, k + 1)] = z;
        h[(k + 1, 0)] = z.conj();
    }
    h
}

/// Orthonormal basis of the zero-energy subspace without bright-state weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DarkFrame {
    pub d1: StateVector<4>,
    pub d2: StateVector<4>,
}

impl DarkFrame {
    /// Components `(⟨D₁|ψ⟩, ⟨D₂|ψ⟩)`.
    pub fn project(&self, psi: &StateVector<4>) -> [C64; 2] {
        [self.d1.inner(psi), self.d2.inner(psi)]
    }

    /// `c₁|D₁⟩ + c₂|D₂⟩`.
    pub fn embed(&self, c: [C64; 2]) -> StateVector<4> {
        let a = self.d1.amplitudes();
        let b = self.d2.amplitudes();
        StateVector::new(std::array::from_fn(|k| c[0] * a[k] + c[1] * b[k]))
    }

    pub fn state(&self, k: usize) -> &StateVector<4> {
        match k {
            0 => &self.d1,
            1 => &self.d2,
            _ => panic!("dark frame has two states, asked for index {k}"),
        }
    }
}

/// Dark states in the gauge
/// `|D₁⟩ = e^{iξ}(sinφ|1⟩ − cosφ|2⟩)`,
/// `|D₂⟩ = e^{iξ}cosθ(cosφ|1⟩ + sinφ|2⟩) − sinθ|3⟩`.
pub fn dark_states(a: &ControlAngles) -> DarkFrame {
    let (st, ct) = a.theta.sin_cos();
    let (sp, cp) = a.phi.sin_cos();
    let e = C64::from_polar(1.0, a.xi);
    DarkFrame {
        d1: StateVector::new([ZERO, e * sp, -e * cp, ZERO]),
        d2: StateVector::new([ZERO, e * (ct * cp), e * (ct * sp), C64::new(-st, 0.0)]),
    }
}

/// Population outside the dark subspace: `‖ψ‖² − |⟨D₁|ψ⟩|² − |⟨D₂|ψ⟩|²`.
pub fn dark_leakage(frame: &DarkFrame, psi: &StateVector<4>) -> f64 {
    let [c1, c2] = frame.project(psi);
    let norm2 = psi.norm().powi(2);
    (norm2 - c1.norm_sqr() - c2.norm_sqr()).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c1() -> LoopSpec {
        LoopSpec::c1(2.0, 1.5, 64).unwrap()
    }

    #[test]
    fn c1_endpoints() {
        let spec = c1();
        for sign in [-1.0, 1.0] {
            let r = loop_rabi(&spec, sign * spec.tau).unwrap();
            assert_eq!(r.0[0], ZERO);
            assert_eq!(r.0[1], ZERO);
            let expected = C64::from_polar(2.0 * (-1f64).exp(), sign * PI);
            assert!((r.0[2] - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn c1_midpoint() {
        let r = loop_rabi(&c1(), 0.0).unwrap();
        assert_eq!(r, RabiTriple::real(2.0, 2.0, 2.0));
    }

    #[test]
    fn c2_reduces_to_c1() {
        let a = c1();
        let b = LoopSpec::c2(a.omega0, a.tau, 1.0, 0.0, a.steps).unwrap();
        for k in 0..=20 {
            let t = -a.tau + k as f64 * 0.1 * a.tau;
            assert_eq!(loop_rabi(&a, t).unwrap(), loop_rabi(&b, t).unwrap());
            assert_eq!(loop_aux_drive(&b, t).unwrap(), 0.0);
        }
    }

    #[test]
    fn c2_aux_drive_completes_omega2() {
        let spec = LoopSpec::c2(1.0, 1.0, 6.0, 0.9, 16).unwrap();
        let t = 0.3;
        let f = (FRAC_PI_2 * t).cos();
        let r = loop_rabi(&spec, t).unwrap();
        assert!((r.0[1].re - 6.0 * f * f).abs() < 1e-14);
        assert!((loop_aux_drive(&spec, t).unwrap() - 5.0 * f * f).abs() < 1e-14);
        assert!((r.0[2].norm() - (-(t - 0.9) * (t - 0.9)).exp()).abs() < 1e-15);
    }

    #[test]
    fn outside_loop_is_rejected() {
        let spec = c1();
        assert!(matches!(loop_rabi(&spec, 1.6), Err(Error::OutsideLoop { .. })));
        assert!(matches!(loop_angles(&spec, -2.0), Err(Error::OutsideLoop { .. })));
    }

    #[test]
    fn invalid_specs() {
        assert!(LoopSpec::c1(1.0, 0.0, 10).is_err());
        assert!(LoopSpec::c1(1.0, 1.0, 1).is_err());
        assert!(LoopSpec::c2(1.0, 1.0, 0.0, 0.5, 10).is_err());
        assert!(LoopSpec::c2(1.0, 1.0, 2.0, 2.5, 10).is_err());
    }

    #[test]
    fn angles_examples() {
        let a = control_angles(&loop_rabi(&c1(), 0.0).unwrap()).unwrap();
        assert!((a.phi - PI / 4.0).abs() < 1e-15);
        let a = control_angles(&RabiTriple::real(0.0, 0.0, 3.0)).unwrap();
        assert_eq!((a.theta, a.phi), (0.0, 0.0));
        let a = control_angles(&RabiTriple::real(0.0, 1.0, 0.0)).unwrap();
        assert_eq!((a.theta, a.phi), (FRAC_PI_2, FRAC_PI_2));
        assert_eq!(control_angles(&RabiTriple::real(0.0, 0.0, 0.0)), Err(Error::UndefinedAngles));
    }

    #[test]
    fn loop_angle_endpoints_are_exact() {
        let spec = c1();
        let start = loop_angles(&spec, -spec.tau).unwrap();
        let end = loop_angles(&spec, spec.tau).unwrap();
        assert_eq!((start.theta, start.phi, start.xi), (0.0, 0.0, -PI));
        assert_eq!((end.theta, end.phi, end.xi), (0.0, 0.0, PI));
        // Generic inversion recovers ±π from the drive phase itself.
        let g = control_angles(&loop_rabi(&spec, -spec.tau).unwrap()).unwrap();
        assert!((g.xi + PI).abs() < 1e-15 && g.theta == 0.0 && g.phi == 0.0);
    }

    #[test]
    fn phi_rate_matches_finite_difference() {
        for spec in [c1(), LoopSpec::c2(3.0, 2.0, 6.0, 0.9, 8).unwrap()] {
            for k in 1..20 {
                let s = -1.0 + 0.1 * k as f64;
                let h = 1e-6;
                let fd = (spec.angles_at(s + h).phi - spec.angles_at(s - h).phi) / (2.0 * h);
                assert!((fd - spec.phi_rate_at(s)).abs() < 1e-8, "s = {s}");
            }
        }
    }

    #[test]
    fn path_unwrapping_is_continuous() {
        let spec = c1();
        let path: Vec<_> =
            (0..=40).map(|k| loop_rabi(&spec, -spec.tau + k as f64 * spec.tau / 20.0).unwrap()).collect();
        let angles = control_angles_path(&path).unwrap();
        for (k, a) in angles.iter().enumerate() {
            let s = -1.0 + k as f64 / 20.0;
            assert!((a.xi - PI * s).abs() < 1e-12, "k = {k}: {}", a.xi);
        }
    }

    #[test]
    fn dark_state_example() {
        let d = dark_states(&ControlAngles::new(1.0, 0.0, 0.0, -PI));
        assert!(d.d2.max_abs_diff(&StateVector::basis(1).scale(C64::new(-1.0, 0.0))) < 1e-15);
    }

    #[test]
    fn single_coupling_spectrum() {
        let h = tripod_hamiltonian(&RabiTriple::real(3.0, 0.0, 0.0));
        let mut ev = crate::numerics::HermitianEigen::new(&h).values;
        ev.sort_by(f64::total_cmp);
        for (got, want) in ev.iter().zip([-3.0, 0.0, 0.0, 3.0]) {
            assert!((got - want).abs() < 1e-12, "{ev:?}");
        }
    }

    #[test]
    fn leakage_of_bright_state_is_one() {
        let r = RabiTriple::real(1.0, 2.0, 0.5);
        let frame = dark_states(&control_angles(&r).unwrap());
        let bright = StateVector::<4>::basis(0);
        assert!((dark_leakage(&frame, &bright) - 1.0).abs() < 1e-15);
        let dark = frame.embed([C64::new(0.6, 0.0), C64::new(0.0, 0.8)]);
        assert!(dark_leakage(&frame, &dark) < 1e-15);
    }
}
