// SPDX-License-Identifier: Apache-2.0

//! Non-Abelian holonomy of the tripod dark subspace.
//!
//! The dark frame `{|D₁⟩, |D₂⟩}` is transported by the connection
//! `A_μ = ⟨Dᵢ|∂_μ|Dⱼ⟩` over the control coordinates `(θ, φ, ξ)`. Integrating
//! `U = P exp(−∫A_μ dχ^μ)` around each loop and composing the two loops in
//! both orders gives the population difference that witnesses
//! noncommutativity.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{mat_exp, unitarity_defect, Matrix2, I};
use crate::tripod::{ControlAngles, LoopSpec};

/// Default number of steps per loop.
pub const DEFAULT_STEPS: usize = 4096;

/// Above this unitarity defect, composed inputs are rejected.
const MAX_INPUT_DEFECT: f64 = 1e-6;

/// Components of the dark-subspace connection at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeConnection {
    pub a_theta: Matrix2,
    pub a_phi: Matrix2,
    pub a_xi: Matrix2,
    pub evaluated_at: ControlAngles,
}

/// The connection depends on θ only:
/// `A_θ = 0`, `A_φ = [[0, −cosθ], [cosθ, 0]]`, `A_ξ = diag(i, i·cos²θ)`.
pub fn gauge_connection(a: &ControlAngles) -> GaugeConnection {
    let (a_phi, a_xi) = connection_components(a.theta);
    GaugeConnection { a_theta: Matrix2::zeros(), a_phi, a_xi, evaluated_at: *a }
}

fn connection_components(theta: f64) -> (Matrix2, Matrix2) {
    let c = theta.cos();
    let a_phi = Matrix2::from_real([[0.0, -c], [c, 0.0]]);
    let a_xi = Matrix2::from_diagonal([I, I * (c * c)]);
    (a_phi, a_xi)
}

/// Discretization of the path-ordered exponential.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StepRule {
    /// Connection frozen at the slice midpoint θ, contracted with the exact
    /// increments of φ and ξ. Second order.
    Midpoint,
    /// Two-point Gauss–Legendre Magnus expansion with the commutator term.
    /// Fourth order.
    #[default]
    Magnus4,
}

/// Path-ordered holonomy `U = P exp(−∫A_μ dχ^μ)` of the dark frame around
/// one loop, using [`StepRule::Magnus4`].
pub fn wilson_line(spec: &LoopSpec) -> Result<Matrix2> {
    wilson_line_with(spec, StepRule::default())
}

/// [`wilson_line`] with an explicit step rule.
///
/// The loop is cut into `spec.steps` uniform time slices; every slice
/// contributes one exponential of an anti-Hermitian generator, so the result
/// is unitary to rounding. Later slices multiply from the left.
pub fn wilson_line_with(spec: &LoopSpec, rule: StepRule) -> Result<Matrix2> {
    spec.validate()?;
    let n = spec.steps;
    let h = 2.0 / n as f64;
    let node = |k: usize| -1.0 + 2.0 * k as f64 / n as f64;

    let mut u = Matrix2::identity();
    match rule {
        StepRule::Midpoint => {
            let mut prev = spec.angles_at(node(0));
            for k in 0..n {
                let next = spec.angles_at(node(k + 1));
                let mid = spec.angles_at(0.5 * (node(k) + node(k + 1)));
                let (a_phi, a_xi) = connection_components(mid.theta);
                let generator = -(a_phi.scale_real(next.phi - prev.phi) + a_xi.scale_real(next.xi - prev.xi));
                u = mat_exp(&generator)? * u;
                prev = next;
            }
        }
        StepRule::Magnus4 => {
            // dU/ds = M(s)·U with M = −(A_φ·φ′ + A_ξ·ξ′).
            let rate = |s: f64| -> Matrix2 {
                let (a_phi, a_xi) = connection_components(spec.angles_at(s).theta);
                -(a_phi.scale_real(spec.phi_rate_at(s)) + a_xi.scale_real(spec.xi_rate()))
            };
            let offset = 3f64.sqrt() / 6.0;
            for k in 0..n {
                let s0 = node(k);
                let m1 = rate(s0 + (0.5 - offset) * h);
                let m2 = rate(s0 + (0.5 + offset) * h);
                let generator =
                    (m1 + m2).scale_real(0.5 * h) - m1.commutator(&m2).scale_real(3f64.sqrt() / 12.0 * h * h);
                u = mat_exp(&generator)? * u;
            }
        }
    }
    Ok(u)
}

/// Both loop orders and the resulting populations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolonomyResult {
    pub u1: Matrix2,
    pub u2: Matrix2,
    /// `U = U₂U₁`: C1 first.
    pub u_12: Matrix2,
    /// `U′ = U₁U₂`: C2 first.
    pub u_21: Matrix2,
    /// `|U₂₂|²`.
    pub p: f64,
    /// `|U′₂₂|²`.
    pub p_prime: f64,
    pub p_d: f64,
}

pub fn compose_orders(u1: &Matrix2, u2: &Matrix2) -> Result<HolonomyResult> {
    for u in [u1, u2] {
        if !u.is_finite() {
            return Err(Error::InvalidArgument("non-finite unitary".into()));
        }
        let defect = unitarity_defect(u);
        if defect > MAX_INPUT_DEFECT {
            return Err(Error::DegradedInput(defect));
        }
    }
    let u_12 = *u2 * *u1;
    let u_21 = *u1 * *u2;
    let p = u_12[(1, 1)].norm_sqr();
    let p_prime = u_21[(1, 1)].norm_sqr();
    Ok(HolonomyResult { u1: *u1, u2: *u2, u_12, u_21, p, p_prime, p_d: p_prime - p })
}

/// `P_d = P′ − P`; nonzero only if the two loop holonomies fail to commute.
pub fn population_difference(h: &HolonomyResult) -> f64 {
    h.p_prime - h.p
}

/// Holonomies of C1 and C2(α, β) at unit Ω₀ and τ, composed both ways.
pub fn loop_pair(alpha: f64, beta: f64, steps: usize) -> Result<HolonomyResult> {
    let u1 = wilson_line(&LoopSpec::c1(1.0, 1.0, steps)?)?;
    let u2 = wilson_line(&LoopSpec::c2(1.0, 1.0, alpha, beta, steps)?)?;
    compose_orders(&u1, &u2)
}

/// Population difference over an (α, β) grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    /// `p_d[i][j]` at `(alphas[i], betas[j])`.
    pub p_d: Vec<Vec<f64>>,
    pub p: Vec<Vec<f64>>,
    pub p_prime: Vec<Vec<f64>>,
    pub steps: usize,
}

impl SweepTable {
    /// Grid point with the largest `P_d` as `(α, β, P_d)`; first wins on ties.
    pub fn maximum(&self) -> (f64, f64, f64) {
        let mut best = (self.alphas[0], self.betas[0], self.p_d[0][0]);
        for (i, row) in self.p_d.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v > best.2 {
                    best = (self.alphas[i], self.betas[j], v);
                }
            }
        }
        best
    }
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument(format!("{name} grid is empty")));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!("{name} grid must be finite and strictly increasing")));
    }
    Ok(())
}

/// Evaluates `P_d` at every `(α, β)` grid point.
///
/// C1 does not depend on (α, β), so its holonomy is computed once. Grid points
/// run in parallel on the current rayon pool; each entry is computed
/// independently, so the table is bitwise identical to a serial sweep.
pub fn sweep_pd(alpha_grid: &[f64], beta_grid: &[f64], steps: usize) -> Result<SweepTable> {
    check_grid("alpha", alpha_grid)?;
    check_grid("beta", beta_grid)?;
    let u1 = wilson_line(&LoopSpec::c1(1.0, 1.0, steps)?)?;

    let points: Vec<(f64, f64)> = alpha_grid.iter().flat_map(|&a| beta_grid.iter().map(move |&b| (a, b))).collect();
    let results = points
        .par_iter()
        .map(|&(alpha, beta)| {
            let u2 = wilson_line(&LoopSpec::c2(1.0, 1.0, alpha, beta, steps)?)?;
            compose_orders(&u1, &u2)
        })
        .collect::<Result<Vec<_>>>()?;

    let nb = beta_grid.len();
    let table = |f: fn(&HolonomyResult) -> f64| -> Vec<Vec<f64>> {
        results.chunks(nb).map(|row| row.iter().map(f).collect()).collect()
    };
    Ok(SweepTable {
        alphas: alpha_grid.to_vec(),
        betas: beta_grid.to_vec(),
        p_d: table(|h| h.p_d),
        p: table(|h| h.p),
        p_prime: table(|h| h.p_prime),
        steps,
    })
}

/// `exp(−i·angle·σ)` for an involution σ (σ² = I), e.g. a Pauli matrix.
pub fn pauli_rotation(sigma: &Matrix2, angle: f64) -> Matrix2 {
    let (s, c) = angle.sin_cos();
    Matrix2::identity().scale_real(c) + sigma.scale(-I * s)
}
