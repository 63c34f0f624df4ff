// SPDX-License-Identifier: Apache-2.0

//! Direct Schrödinger evolution used to cross-check the holonomy.
//!
//! Loop runs normalize τ = 1 and set Ω₀ = Ω₀τ; the geometric part of the
//! evolution is independent of that choice. The RWA comparison works in
//! physical units (rad/ns, ns).

use crate::device::{build_subspace_hamiltonian, DriveSpec, Envelope, FluxSlopes, QubitWorkingPoint};
use crate::error::{Error, Result};
use crate::numerics::{propagate, propagator, HermitianEigen, Matrix2, Matrix4, StateVector, C64};
use crate::tripod::{dark_leakage, dark_states, tripod_hamiltonian, DarkFrame, LoopSpec, RabiTriple};

/// Integration steps per unit of Ω₀τ when none are given.
pub const DEFAULT_STEPS_PER_OMEGA_TAU: f64 = 200.0;

/// Accepted norm error of an initial state. Looser than the per-run drift
/// bound so that a long first loop can feed the second.
const INPUT_NORM_TOL: f64 = 1e-8;

/// Leakage above this is reported as an adiabaticity violation.
const LEAKAGE_WARNING: f64 = 0.5;

/// Default step count for a loop at adiabaticity `omega0_tau`.
pub fn default_steps(omega0_tau: f64) -> usize {
    (DEFAULT_STEPS_PER_OMEGA_TAU * omega0_tau).ceil().max(2.0) as usize
}

/// One loop traversed by direct integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdiabaticRun {
    /// Loop shape; Ω₀ and τ are replaced by the normalized values used.
    pub spec: LoopSpec,
    pub omega0_tau: f64,
    pub steps: usize,
    pub final_state: StateVector<4>,
    /// `(⟨D₁|ψ⟩, ⟨D₂|ψ⟩)` against the dark frame at the end of the loop.
    pub dark_overlap: [C64; 2],
    /// Population outside the end-of-loop dark subspace.
    pub leakage: f64,
}

fn normalized_loop(spec: &LoopSpec, omega0_tau: f64, steps: usize) -> Result<LoopSpec> {
    if !(omega0_tau > 0.0 && omega0_tau.is_finite()) {
        return Err(Error::InvalidArgument(format!("Ω₀τ must be positive, got {omega0_tau}")));
    }
    LoopSpec::new(spec.loop_id, omega0_tau, 1.0, spec.alpha, spec.beta, steps)
}

fn loop_hamiltonian(spec: &LoopSpec) -> impl Fn(f64) -> Matrix4 + '_ {
    move |t| tripod_hamiltonian(&spec.rabi_at(t))
}

/// Dark frame at the start (`s = -1`) or end (`s = 1`) of a loop.
pub fn loop_dark_frame(spec: &LoopSpec, s: f64) -> DarkFrame {
    dark_states(&spec.angles_at(s))
}

/// Integrates `i∂ψ/∂t = H(t)ψ` around one loop at adiabaticity `omega0_tau`.
pub fn propagate_loop(spec: &LoopSpec, omega0_tau: f64, steps: usize, psi0: &StateVector<4>) -> Result<AdiabaticRun> {
    if (psi0.norm() - 1.0).abs() > INPUT_NORM_TOL {
        return Err(Error::InvalidArgument(format!("initial state has norm {}", psi0.norm())));
    }
    let spec = normalized_loop(spec, omega0_tau, steps)?;
    let final_state = propagate(loop_hamiltonian(&spec), psi0, -1.0, 1.0, steps)?;
    let frame = loop_dark_frame(&spec, 1.0);
    let leakage = dark_leakage(&frame, &final_state);
    if leakage > LEAKAGE_WARNING {
        log::warn!("leakage {leakage:.3} out of the dark subspace after {:?} at Ω₀τ = {omega0_tau}", spec.loop_id);
    }
    Ok(AdiabaticRun { spec, omega0_tau, steps, final_state, dark_overlap: frame.project(&final_state), leakage })
}

/// Dark-frame transport matrix obtained by evolving both dark states:
/// entry `(i, j)` is `⟨Dᵢ(τ)|ψⱼ(τ)⟩` with `ψⱼ(−τ) = |Dⱼ(−τ)⟩`.
pub fn dynamic_holonomy(spec: &LoopSpec, omega0_tau: f64, steps: usize) -> Result<Matrix2> {
    let norm_spec = normalized_loop(spec, omega0_tau, steps)?;
    let start = loop_dark_frame(&norm_spec, -1.0);
    let mut m = Matrix2::zeros();
    for j in 0..2 {
        let run = propagate_loop(spec, omega0_tau, steps, start.state(j))?;
        m[(0, j)] = run.dark_overlap[0];
        m[(1, j)] = run.dark_overlap[1];
    }
    Ok(m)
}

/// Both loop orders evolved directly from `|D₂⟩(−τ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoLoopRun {
    pub alpha: f64,
    pub beta: f64,
    pub omega0_tau: f64,
    pub steps: usize,
    /// Population of `|1⟩` after C1 then C2.
    pub p: f64,
    /// Population of `|1⟩` after C2 then C1.
    pub p_prime: f64,
    pub p_d: f64,
    /// Larger of the two final-state leakages.
    pub leakage: f64,
}

/// Runs C1 on `[−τ, τ]` followed by C2 on `[τ, 3τ]`, and the reverse order.
///
/// The second loop restarts its own clock, so its drive phase ξ begins again at
/// −π. Both loops start and end at θ = φ = 0, where they share a dark frame.
pub fn two_loop_dynamics(alpha: f64, beta: f64, omega0_tau: f64, steps: usize) -> Result<TwoLoopRun> {
    let c1 = LoopSpec::c1(omega0_tau, 1.0, steps)?;
    let c2 = LoopSpec::c2(omega0_tau, 1.0, alpha, beta, steps)?;
    let psi0 = *loop_dark_frame(&c1, -1.0).state(1);

    let run = |first: &LoopSpec, second: &LoopSpec| -> Result<(f64, f64)> {
        let mid = propagate_loop(first, omega0_tau, steps, &psi0)?;
        let end = propagate_loop(second, omega0_tau, steps, &mid.final_state)?;
        Ok((end.final_state.population(1), end.leakage))
    };
    let (p, leak_12) = run(&c1, &c2)?;
    let (p_prime, leak_21) = run(&c2, &c1)?;
    Ok(TwoLoopRun { alpha, beta, omega0_tau, steps, p, p_prime, p_d: p_prime - p, leakage: leak_12.max(leak_21) })
}

/// `P_d` from direct evolution of both loop orders.
pub fn dynamics_pd(alpha: f64, beta: f64, omega0_tau: f64, steps: usize) -> Result<f64> {
    Ok(two_loop_dynamics(alpha, beta, omega0_tau, steps)?.p_d)
}

/// `P_d` implied by composing the two directly-evolved dark-frame matrices.
pub fn dynamic_holonomy_pd(alpha: f64, beta: f64, omega0_tau: f64, steps: usize) -> Result<f64> {
    let u1 = dynamic_holonomy(&LoopSpec::c1(1.0, 1.0, steps)?, omega0_tau, steps)?;
    let u2 = dynamic_holonomy(&LoopSpec::c2(1.0, 1.0, alpha, beta, steps)?, omega0_tau, steps)?;
    // Leaky runs are not unitary on the dark frame; compose without the check.
    let p = (u2 * u1)[(1, 1)].norm_sqr();
    let p_prime = (u1 * u2)[(1, 1)].norm_sqr();
    Ok(p_prime - p)
}

/// One driven qubit for the rotating-wave comparison.
#[derive(Clone, Debug)]
pub struct RwaQubit {
    pub point: QubitWorkingPoint,
    pub slopes: FluxSlopes,
    pub drive: DriveSpec,
}

/// Full vs effective propagator after a common drive duration.
#[derive(Clone, Debug)]
pub struct RwaComparison {
    pub working_points: [QubitWorkingPoint; 3],
    pub drive: [DriveSpec; 3],
    pub duration: f64,
    pub steps: usize,
    /// Max-entry distance of the two propagators at `duration`.
    pub deviation: f64,
    /// Largest distance seen at the intermediate checkpoints (diagnostic).
    pub max_intermediate_deviation: f64,
}

/// Static Hamiltonian of the three qubits at their working points.
fn static_hamiltonian(points: &[QubitWorkingPoint; 3]) -> Matrix4 {
    build_subspace_hamiltonian(points.map(|p| p.g0), points.map(|p| p.delta0))
}

/// Eigenbasis of the static Hamiltonian, columns ordered so that column `b`
/// is the dressed state continuously connected to bare state `b`, with a real
/// positive overlap.
fn dressed_basis(points: &[QubitWorkingPoint; 3]) -> Result<([f64; 4], Matrix4)> {
    let eig = HermitianEigen::new(&static_hamiltonian(points));
    let mut order = [usize::MAX; 4];
    for b in 0..4 {
        let k = (0..4).max_by(|&x, &y| eig.vectors[(b, x)].norm().total_cmp(&eig.vectors[(b, y)].norm())).unwrap();
        if order.contains(&k) {
            return Err(Error::Configuration(
                "dressed states cannot be labelled: qubits too close to each other or to the resonator".into(),
            ));
        }
        order[b] = k;
    }
    let mut v = Matrix4::zeros();
    let mut energies = [0.0; 4];
    for (b, &k) in order.iter().enumerate() {
        let z = eig.vectors[(b, k)];
        let phase = z.conj() / z.norm();
        for r in 0..4 {
            v[(r, b)] = eig.vectors[(r, k)] * phase;
        }
        energies[b] = eig.values[k];
    }
    Ok((energies, v))
}

/// Transition frequencies of the static Hamiltonian from the shared state to
/// each qubit-like dressed state. Drives must sit on these.
pub fn dressed_detunings(points: &[QubitWorkingPoint; 3]) -> Result<[f64; 3]> {
    let (e, _) = dressed_basis(points)?;
    Ok([e[1] - e[0], e[2] - e[0], e[3] - e[0]])
}

/// Builds three drives tuned to the dressed transitions of `points`.
pub fn resonant_qubits(
    points: [QubitWorkingPoint; 3],
    slopes: [FluxSlopes; 3],
    envelopes: [Envelope; 3],
    phases: [f64; 3],
) -> Result<[RwaQubit; 3]> {
    let nu = dressed_detunings(&points)?;
    let mut envelopes = envelopes.into_iter();
    Ok(std::array::from_fn(|i| RwaQubit {
        point: points[i],
        slopes: slopes[i],
        drive: DriveSpec { envelope: envelopes.next().unwrap(), omega_d: nu[i], phase: phases[i] },
    }))
}

/// Coupling used for the effective tripod in [`rwa_compare_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EffectiveCoupling {
    /// `Ωᵢ = ηᵢ·Lᵢ·e^{iφᵢ}`, first order in `g/Δ`.
    #[default]
    FirstOrder,
    /// `Ωᵢ = ½⟨B̃|∂H/∂Φᵢ|ĩ⟩·Fᵢ·e^{iφᵢ}` with the exact dressed states. Isolates
    /// the rotating-wave error from the perturbative error in η.
    Dressed,
}

/// Compares the flux-driven one-excitation dynamics with the effective tripod
/// `Ωᵢ(t) = ηᵢ·Lᵢ(t)·e^{iφᵢ}`.
///
/// The full Hamiltonian, with detunings and couplings modulated at the drive
/// frequencies, is integrated in the interaction picture of the static
/// Hamiltonian, expressed in its dressed eigenbasis `{B, 1, 2, 3}`.
pub fn rwa_compare(qubits: &[RwaQubit; 3], duration: f64, steps: usize) -> Result<RwaComparison> {
    rwa_compare_with(qubits, duration, steps, EffectiveCoupling::FirstOrder)
}

/// [`rwa_compare`] with a choice of effective coupling.
pub fn rwa_compare_with(
    qubits: &[RwaQubit; 3],
    duration: f64,
    steps: usize,
    coupling: EffectiveCoupling,
) -> Result<RwaComparison> {
    const CHECKPOINTS: usize = 16;
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(Error::InvalidArgument(format!("duration must be positive, got {duration}")));
    }
    if steps < CHECKPOINTS {
        return Err(Error::InvalidArgument(format!("need at least {CHECKPOINTS} steps")));
    }
    let points = qubits.each_ref().map(|q| q.point);
    let (energies, v) = dressed_basis(&points)?;
    for (i, q) in qubits.iter().enumerate() {
        let nu = energies[i + 1] - energies[0];
        if (q.drive.omega_d - nu).abs() > 1e-9 * nu.abs().max(1.0) {
            return Err(Error::Configuration(format!(
                "drive {} at {} rad/ns is off resonance with its transition at {} rad/ns",
                i + 1,
                q.drive.omega_d,
                nu
            )));
        }
    }

    let v_adj = v.adjoint();
    let interaction = |t: f64| -> Matrix4 {
        let mut dg = [0.0; 3];
        let mut dd = [0.0; 3];
        for (i, q) in qubits.iter().enumerate() {
            let carrier = (q.drive.omega_d * t + q.drive.phase).cos();
            let f = q.drive.envelope.at(t);
            dd[i] = q.slopes.d_delta * f * carrier;
            dg[i] = q.slopes.d_coupling * f * carrier;
        }
        let mut h = v_adj * build_subspace_hamiltonian(dg, dd) * v;
        for a in 0..4 {
            for b in 0..4 {
                h[(a, b)] *= C64::from_polar(1.0, (energies[a] - energies[b]) * t);
            }
        }
        // Enforce exact Hermiticity lost to rounding in the frame rotation.
        (h + h.adjoint()).scale_real(0.5)
    };
    // Effective Rabi frequency per unit flux amplitude.
    let per_flux: [C64; 3] = std::array::from_fn(|i| {
        let q = &qubits[i];
        match coupling {
            EffectiveCoupling::FirstOrder => C64::new(q.point.eta * q.slopes.d_delta, 0.0),
            EffectiveCoupling::Dressed => {
                let mut dg = [0.0; 3];
                let mut dd = [0.0; 3];
                dg[i] = q.slopes.d_coupling;
                dd[i] = q.slopes.d_delta;
                (v_adj * build_subspace_hamiltonian(dg, dd) * v)[(0, i + 1)] * 0.5
            }
        }
    });
    let effective = |t: f64| -> Matrix4 {
        let r = RabiTriple(std::array::from_fn(|i| {
            let q = &qubits[i];
            per_flux[i] * q.drive.envelope.at(t) * C64::from_polar(1.0, q.drive.phase)
        }));
        tripod_hamiltonian(&r)
    };

    let mut u_full = Matrix4::identity();
    let mut u_eff = Matrix4::identity();
    let mut max_intermediate: f64 = 0.0;
    let per = steps / CHECKPOINTS;
    let mut done = 0;
    for c in 0..CHECKPOINTS {
        let n = if c + 1 == CHECKPOINTS { steps - done } else { per };
        let t0 = duration * done as f64 / steps as f64;
        let t1 = duration * (done + n) as f64 / steps as f64;
        u_full = propagator(interaction, t0, t1, n)? * u_full;
        u_eff = propagator(effective, t0, t1, n)? * u_eff;
        done += n;
        max_intermediate = max_intermediate.max(u_full.max_abs_diff(&u_eff));
    }

    Ok(RwaComparison {
        working_points: points,
        drive: qubits.each_ref().map(|q| q.drive.clone()),
        duration,
        steps,
        deviation: u_full.max_abs_diff(&u_eff),
        max_intermediate_deviation: max_intermediate,
    })
}
