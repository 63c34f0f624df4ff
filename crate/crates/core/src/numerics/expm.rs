// SPDX-License-Identifier: Apache-2.0

use super::eigen::HermitianEigen;
use super::matrix::{ComplexMatrix, C64, I};
use crate::error::{Error, Result};

/// Generators whose `G + G†` stays below this are treated as anti-Hermitian.
const ANTI_HERMITIAN_TOL: f64 = 1e-13;

/// Matrix exponential `exp(G)`.
///
/// Anti-Hermitian generators (`G = -iH`) go through an eigendecomposition of
/// `H`, which keeps the result unitary to rounding. Anything else falls back to
/// scaling and squaring on a truncated Taylor series.
pub fn mat_exp<const N: usize>(g: &ComplexMatrix<N>) -> Result<ComplexMatrix<N>> {
    if !g.is_finite() {
        return Err(Error::InvalidArgument("matrix exponential of non-finite generator".into()));
    }
    let scale = g.max_abs().max(1.0);
    if g.anti_hermiticity_defect() <= ANTI_HERMITIAN_TOL * scale {
        // G = -iH  =>  H = iG.
        return Ok(exp_hermitian(&g.scale(I), 1.0));
    }
    Ok(taylor_expm(g))
}

/// `exp(-i·H·t)` for Hermitian `H`.
pub fn exp_hermitian<const N: usize>(h: &ComplexMatrix<N>, t: f64) -> ComplexMatrix<N> {
    HermitianEigen::new(h).map(|l| C64::from_polar(1.0, -l * t))
}

fn taylor_expm<const N: usize>(g: &ComplexMatrix<N>) -> ComplexMatrix<N> {
    // Scale down until ‖G/2^s‖ ≤ 1/2, sum the series, square back up.
    let norm = g.max_abs() * N as f64;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let a = g.scale_real(0.5f64.powi(squarings));

    let mut term = ComplexMatrix::<N>::identity();
    let mut sum = term;
    for k in 1..=30 {
        term = (term * a).scale_real(1.0 / k as f64);
        sum = sum + term;
        if term.max_abs() < 1e-18 * sum.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}
