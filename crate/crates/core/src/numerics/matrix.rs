// SPDX-License-Identifier: Apache-2.0

//! Fixed-size dense complex matrices and state vectors.
//!
//! Everything in this crate lives in a 2- or 4-dimensional Hilbert space, so
//! the storage is a plain row-major array sized at compile time.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix of dimension `N`, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexMatrix<const N: usize> {
    entries: [[C64; N]; N],
}

pub type Matrix2 = ComplexMatrix<2>;
pub type Matrix4 = ComplexMatrix<4>;

impl<const N: usize> ComplexMatrix<N> {
    pub const fn from_rows(entries: [[C64; N]; N]) -> Self {
        Self { entries }
    }

    pub fn zeros() -> Self {
        Self::from_rows([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i][i] = d;
        }
        m
    }

    /// Builds a matrix from real entries.
    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.entries[i][j] = C64::new(x, 0.0);
            }
        }
        m
    }

    pub const fn dim(&self) -> usize {
        N
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[j][i] = self.entries[i][j].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|x| *x *= s);
        m
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    pub fn column(&self, j: usize) -> StateVector<N> {
        StateVector::new(std::array::from_fn(|i| self.entries[i][j]))
    }

    pub fn mul_vec(&self, v: &StateVector<N>) -> StateVector<N> {
        let a = v.amplitudes();
        StateVector::new(std::array::from_fn(|i| self.entries[i].iter().zip(a).map(|(m, x)| m * x).sum()))
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-entry absolute distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Max-entry modulus of `H - H†`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Max-entry modulus of `G + G†`.
    pub fn anti_hermiticity_defect(&self) -> f64 {
        (*self + self.adjoint()).max_abs()
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }
}

impl<const N: usize> Default for ComplexMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Index<(usize, usize)> for ComplexMatrix<N> {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for ComplexMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i][j]
    }
}

impl<const N: usize> Add for ComplexMatrix<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for ComplexMatrix<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Neg for ComplexMatrix<N> {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale_real(-1.0)
    }
}

impl<const N: usize> Mul for ComplexMatrix<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

/// Max-entry absolute deviation of `U†U` from the identity.
pub fn unitarity_defect<const N: usize>(u: &ComplexMatrix<N>) -> f64 {
    (u.adjoint() * *u).max_abs_diff(&ComplexMatrix::identity())
}

/// Pure-state amplitudes in a fixed basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector<const N: usize> {
    amplitudes: [C64; N],
}

impl<const N: usize> StateVector<N> {
    pub const fn new(amplitudes: [C64; N]) -> Self {
        Self { amplitudes }
    }

    /// Unit vector along basis state `k`.
    pub fn basis(k: usize) -> Self {
        let mut a = [ZERO; N];
        a[k] = ONE;
        Self::new(a)
    }

    pub fn amplitudes(&self) -> &[C64; N] {
        &self.amplitudes
    }

    pub const fn dim(&self) -> usize {
        N
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|⟨k|ψ⟩|²`.
    pub fn population(&self, k: usize) -> f64 {
        self.amplitudes[k].norm_sqr()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.amplitudes.map(|z| z * s))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.amplitudes.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl<const N: usize> Index<usize> for StateVector<N> {
    type Output = C64;

    fn index(&self, k: usize) -> &C64 {
        &self.amplitudes[k]
    }
}

/// Pauli matrices.
pub mod pauli {
    use super::{Matrix2, C64, I, ONE, ZERO};

    pub fn x() -> Matrix2 {
        Matrix2::from_rows([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn y() -> Matrix2 {
        Matrix2::from_rows([[ZERO, -I], [I, ZERO]])
    }

    pub fn z() -> Matrix2 {
        Matrix2::from_rows([[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]])
    }
}
