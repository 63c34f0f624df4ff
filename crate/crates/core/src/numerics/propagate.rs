// SPDX-License-Identifier: Apache-2.0

use super::expm::exp_hermitian;
use super::matrix::{ComplexMatrix, StateVector};
use crate::error::{Error, Result};

/// Largest tolerated max-entry `|H - H†|` for a Hamiltonian sample.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Integrates `i·dψ/dt = H(t)·ψ` from `t0` to `t1`.
///
/// Each of the `steps` uniform intervals is advanced by the exact exponential of
/// the Hamiltonian frozen at the interval midpoint, so the map is unitary per
/// step and second-order accurate in the step size.
pub fn propagate<const N: usize, H>(
    hamiltonian: H,
    psi0: &StateVector<N>,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<StateVector<N>>
where
    H: Fn(f64) -> ComplexMatrix<N>,
{
    let mut psi = *psi0;
    for_each_step(hamiltonian, t0, t1, steps, |u| psi = u.mul_vec(&psi))?;
    Ok(psi)
}

/// Same stepping as [`propagate`], accumulating the full propagator.
pub fn propagator<const N: usize, H>(hamiltonian: H, t0: f64, t1: f64, steps: usize) -> Result<ComplexMatrix<N>>
where
    H: Fn(f64) -> ComplexMatrix<N>,
{
    let mut u_total = ComplexMatrix::<N>::identity();
    for_each_step(hamiltonian, t0, t1, steps, |u| u_total = *u * u_total)?;
    Ok(u_total)
}

fn for_each_step<const N: usize, H, F>(hamiltonian: H, t0: f64, t1: f64, steps: usize, mut apply: F) -> Result<()>
where
    H: Fn(f64) -> ComplexMatrix<N>,
    F: FnMut(&ComplexMatrix<N>),
{
    if steps == 0 {
        return Err(Error::InvalidArgument("propagation needs at least one step".into()));
    }
    if !(t0.is_finite() && t1.is_finite()) {
        return Err(Error::InvalidArgument("non-finite time interval".into()));
    }
    let dt = (t1 - t0) / steps as f64;
    for k in 0..steps {
        let t_mid = t0 + (k as f64 + 0.5) * dt;
        let h = hamiltonian(t_mid);
        if !h.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite Hamiltonian at t = {t_mid}")));
        }
        let defect = h.hermiticity_defect();
        if defect > HERMITICITY_TOL {
            return Err(Error::NonHermitian { t: t_mid, defect });
        }
        apply(&exp_hermitian(&h, dt));
    }
    Ok(())
}
