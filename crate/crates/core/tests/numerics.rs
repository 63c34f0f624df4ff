// SPDX-License-Identifier: Apache-2.0

use holonomy_core::numerics::{
    mat_exp, propagate, propagator, unitarity_defect, ComplexMatrix, HermitianEigen, Matrix4, StateVector, C64,
};
use holonomy_core::tripod::{loop_rabi, tripod_hamiltonian, LoopSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix<const N: usize>(rng: &mut impl Rng, scale: f64) -> ComplexMatrix<N> {
    let mut m = ComplexMatrix::<N>::zeros();
    for i in 0..N {
        for j in 0..N {
            m[(i, j)] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale;
        }
    }
    m
}

fn anti_hermitian<const N: usize>(m: ComplexMatrix<N>) -> ComplexMatrix<N> {
    (m - m.adjoint()).scale_real(0.5)
}

fn hermitian<const N: usize>(m: ComplexMatrix<N>) -> ComplexMatrix<N> {
    (m + m.adjoint()).scale_real(0.5)
}

// Plain Taylor series with scaling and squaring, kept independent of the
// library's implementation.
fn taylor_exp<const N: usize>(g: &ComplexMatrix<N>) -> ComplexMatrix<N> {
    let norm: f64 = (0..N).map(|i| (0..N).map(|j| g[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max);
    let mut squarings = 0;
    while norm / 2f64.powi(squarings) > 0.25 {
        squarings += 1;
    }
    let a = g.scale_real(1.0 / 2f64.powi(squarings));
    let mut term = ComplexMatrix::<N>::identity();
    let mut sum = term;
    for k in 1..=40 {
        term = (term * a).scale_real(1.0 / k as f64);
        sum = sum + term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

fn matrix_strategy() -> impl Strategy<Value = Matrix4> {
    prop::array::uniform32(-2.0f64..2.0).prop_map(|v| {
        let mut m = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let k = 2 * (4 * i + j);
                m[(i, j)] = C64::new(v[k], v[k + 1]);
            }
        }
        m
    })
}

#[test]
fn exponential_matches_taylor_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for scale in [0.01, 0.3, 1.0, 3.0] {
        for _ in 0..50 {
            let g = anti_hermitian(random_matrix::<4>(&mut rng, scale));
            let e = mat_exp(&g).unwrap();
            let t = taylor_exp(&g);
            assert!(e.max_abs_diff(&t) < 1e-12, "scale {scale}: {}", e.max_abs_diff(&t));
            assert!(unitarity_defect(&e) < 1e-13);
        }
    }
}

#[test]
fn general_exponential_matches_taylor_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let g = random_matrix::<3>(&mut rng, 1.0);
        let e = mat_exp(&g).unwrap();
        let t = taylor_exp(&g);
        assert!(e.max_abs_diff(&t) < 1e-11 * t.max_abs().max(1.0));
    }
}

proptest! {
    #[test]
    fn exponential_inverts(m in matrix_strategy()) {
        let g = anti_hermitian(m);
        let prod = mat_exp(&g).unwrap() * mat_exp(&-g).unwrap();
        prop_assert!(prod.max_abs_diff(&Matrix4::identity()) < 1e-12);
    }

    #[test]
    fn general_exponential_inverts(m in matrix_strategy()) {
        let g = m.scale_real(0.5);
        let prod = mat_exp(&g).unwrap() * mat_exp(&-g).unwrap();
        prop_assert!(prod.max_abs_diff(&Matrix4::identity()) < 1e-9);
    }

    #[test]
    fn eigen_reconstructs(m in matrix_strategy()) {
        let h = hermitian(m);
        let eig = HermitianEigen::new(&h);
        let back = eig.map(|x| C64::new(x, 0.0));
        prop_assert!(back.max_abs_diff(&h) < 1e-12 * h.max_abs().max(1.0));
        prop_assert!(unitarity_defect(&eig.vectors) < 1e-13);
    }
}

#[test]
fn eigenvalues_match_reference_solver() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let h = hermitian(random_matrix::<4>(&mut rng, 2.0));
        let reference = nalgebra::Matrix4::from_fn(|i, j| h[(i, j)]);
        let mut expected: Vec<f64> = reference.symmetric_eigenvalues().iter().copied().collect();
        expected.sort_by(f64::total_cmp);
        let mut got = HermitianEigen::new(&h).values.to_vec();
        got.sort_by(f64::total_cmp);
        for (a, b) in got.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12 * h.max_abs().max(1.0), "{got:?} vs {expected:?}");
        }
    }
}

#[test]
fn propagator_is_second_order() {
    let spec = LoopSpec::c1(20.0, 1.0, 2).unwrap();
    let h = |t: f64| tripod_hamiltonian(&loop_rabi(&spec, t).unwrap());
    let u: Vec<Matrix4> = [200, 400, 800].iter().map(|&n| propagator(h, -1.0, 1.0, n).unwrap()).collect();
    let ratio = u[0].max_abs_diff(&u[1]) / u[1].max_abs_diff(&u[2]);
    assert!((ratio - 4.0).abs() < 0.3, "ratio {ratio}");
}

#[test]
fn long_runs_preserve_norm() {
    let spec = LoopSpec::c1(50.0, 1.0, 2).unwrap();
    let h = |t: f64| tripod_hamiltonian(&loop_rabi(&spec, t).unwrap());
    let psi0 = StateVector::<4>::basis(1);
    let psi = propagate(h, &psi0, -1.0, 1.0, 100_000).unwrap();
    assert!((psi.norm() - 1.0).abs() <= 1e-10);
}
