// SPDX-License-Identifier: Apache-2.0

//! Cyclic complex Jacobi eigensolver for small Hermitian matrices.

use super::matrix::{ComplexMatrix, C64, ZERO};

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition `H = V·diag(λ)·V†` of a Hermitian matrix.
///
/// Eigenvectors are the columns of `vectors`; eigenvalues are not sorted.
#[derive(Clone, Copy, Debug)]
pub struct HermitianEigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: ComplexMatrix<N>,
}

impl<const N: usize> HermitianEigen<N> {
    /// Diagonalizes `h`, reading only its upper triangle and real diagonal.
    pub fn new(h: &ComplexMatrix<N>) -> Self {
        let mut a = *h;
        for i in 0..N {
            a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
            for j in (i + 1)..N {
                a[(j, i)] = a[(i, j)].conj();
            }
        }
        let mut v = ComplexMatrix::<N>::identity();

        let scale = a.max_abs();
        if scale > 0.0 {
            let threshold = (f64::EPSILON * scale).powi(2) * 1e-4;
            for _ in 0..MAX_SWEEPS {
                let off: f64 =
                    (0..N).flat_map(|i| ((i + 1)..N).map(move |j| (i, j))).map(|(i, j)| a[(i, j)].norm_sqr()).sum();
                if off <= threshold {
                    break;
                }
                for p in 0..N {
                    for q in (p + 1)..N {
                        rotate(&mut a, &mut v, p, q);
                    }
                }
            }
        }

        Self { values: std::array::from_fn(|i| a[(i, i)].re), vectors: v }
    }

    /// `V·diag(f(λ))·V†`.
    pub fn map(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix<N> {
        let fl: [C64; N] = self.values.map(f);
        let v = &self.vectors;
        let mut out = ComplexMatrix::<N>::zeros();
        for i in 0..N {
            for j in 0..N {
                out[(i, j)] = (0..N).map(|k| v[(i, k)] * fl[k] * v[(j, k)].conj()).sum();
            }
        }
        out
    }
}

/// One Jacobi rotation annihilating `a[p][q]`, accumulated into `v`.
fn rotate<const N: usize>(a: &mut ComplexMatrix<N>, v: &mut ComplexMatrix<N>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    // Phase out a[p][q] so the 2x2 block is real symmetric, then rotate.
    let phase = apq.conj() / mag;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // W restricted to (p, q): [[c, s], [-s·phase, c·phase]].
    let wpp = C64::new(c, 0.0);
    let wpq = C64::new(s, 0.0);
    let wqp = -phase * s;
    let wqq = phase * c;

    for k in 0..N {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * wpp + akq * wqp;
        a[(k, q)] = akp * wpq + akq * wqq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * wpp + vkq * wqp;
        v[(k, q)] = vkp * wpq + vkq * wqq;
    }
    for k in 0..N {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = wpp.conj() * apk + wqp.conj() * aqk;
        a[(q, k)] = wpq.conj() * apk + wqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::{unitarity_defect, Matrix4, I};

    fn sample() -> Matrix4 {
        let mut h = Matrix4::zeros();
        let vals = [0.3, -1.2, 2.5, 0.7];
        for i in 0..4 {
            h[(i, i)] = C64::new(vals[i], 0.0);
            for j in (i + 1)..4 {
                let z = C64::new(0.1 * (i + 2 * j) as f64, -0.37 * (j as f64 - i as f64));
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        h
    }

    #[test]
    fn reconstructs_hermitian_matrix() {
        let h = sample();
        let eig = HermitianEigen::new(&h);
        assert!(unitarity_defect(&eig.vectors) < 1e-14);
        let back = eig.map(|l| C64::new(l, 0.0));
        assert!(back.max_abs_diff(&h) < 1e-13);
    }

    #[test]
    fn eigenvectors_satisfy_eigen_equation() {
        let h = sample();
        let eig = HermitianEigen::new(&h);
        for k in 0..4 {
            let v = eig.vectors.column(k);
            let hv = h.mul_vec(&v);
            let lv = v.scale(C64::new(eig.values[k], 0.0));
            assert!(hv.max_abs_diff(&lv) < 1e-13);
        }
    }

    #[test]
    fn diagonal_input_is_untouched() {
        let h = Matrix4::from_diagonal([I * 0.0 + 1.0, C64::new(-2.0, 0.0), ZERO, ZERO]);
        let eig = HermitianEigen::new(&h);
        assert_eq!(eig.values, [1.0, -2.0, 0.0, 0.0]);
        assert_eq!(eig.vectors, Matrix4::identity());
    }
}
