// SPDX-License-Identifier: Apache-2.0

use holonomy_core::holonomy::*;
use holonomy_core::numerics::{pauli, unitarity_defect, Matrix2};
use holonomy_core::tripod::{dark_states, ControlAngles, LoopSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

// ⟨Dᵢ|∂_μ Dⱼ⟩ by central differences; μ = 0, 1, 2 for θ, φ, ξ.
fn numeric_connection(a: &ControlAngles, mu: usize, h: f64) -> Matrix2 {
    let shift = |d: f64| {
        let mut b = *a;
        match mu {
            0 => b.theta += d,
            1 => b.phi += d,
            _ => b.xi += d,
        }
        dark_states(&b)
    };
    let (plus, minus, here) = (shift(h), shift(-h), dark_states(a));
    let mut m = Matrix2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let dp = plus.state(j).inner(here.state(i)).conj();
            let dm = minus.state(j).inner(here.state(i)).conj();
            m[(i, j)] = (dp - dm) / (2.0 * h);
        }
    }
    m
}

#[test]
fn connection_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let a = ControlAngles::new(1.0, rng.gen_range(0.0..3.1), rng.gen_range(-3.1..3.1), rng.gen_range(-3.1..3.1));
        let c = gauge_connection(&a);
        for (mu, exact) in [c.a_theta, c.a_phi, c.a_xi].iter().enumerate() {
            let d = numeric_connection(&a, mu, 1e-5).max_abs_diff(exact);
            assert!(d <= 1e-6, "component {mu} at {a:?}: {d}");
        }
    }
}

#[test]
fn noncommutativity_anchor() {
    let betas = grid(0.0, 1.0, 11);
    let t = sweep_pd(&[6.0], &betas, DEFAULT_STEPS).unwrap();
    let (alpha, beta, pd) = t.maximum();
    assert_eq!(alpha, 6.0);
    assert!((beta - 0.9).abs() <= 0.1 + 1e-12, "β* = {beta}");
    assert!((pd - 0.6).abs() <= 0.1, "P_d* = {pd}");
}

#[test]
fn commuting_loops_give_no_difference() {
    assert!(loop_pair(1.0, 0.0, DEFAULT_STEPS).unwrap().p_d.abs() <= 1e-10);
}

#[test]
fn swapping_the_loops_flips_the_sign() {
    let h = loop_pair(4.0, 0.6, 1024).unwrap();
    let swapped = compose_orders(&h.u2, &h.u1).unwrap();
    assert_eq!(swapped.p_d, -h.p_d);
}

#[test]
fn rescaling_time_and_rabi_scale_leaves_difference_unchanged() {
    let reference = loop_pair(6.0, 0.9, 1024).unwrap().p_d;
    for (omega0, tau) in [(10.0, 0.1), (0.1, 10.0), (3.0, 7.0), (250.0, 0.004)] {
        let u1 = wilson_line(&LoopSpec::c1(omega0, tau, 1024).unwrap()).unwrap();
        let u2 = wilson_line(&LoopSpec::c2(omega0, tau, 6.0, 0.9, 1024).unwrap()).unwrap();
        let pd = compose_orders(&u1, &u2).unwrap().p_d;
        assert!((pd - reference).abs() <= 1e-10, "({omega0}, {tau})");
    }
}

#[test]
fn stretched_loop_has_same_holonomy() {
    let a = wilson_line(&LoopSpec::c2(1.0, 1.0, 3.0, 0.4, 2048).unwrap()).unwrap();
    let b = wilson_line(&LoopSpec::c2(1.0, 10.0, 3.0, 0.4, 2048).unwrap()).unwrap();
    assert!(a.max_abs_diff(&b) <= 1e-12);
}

#[test]
fn default_grid_is_unitary_and_converges() {
    let u1: Vec<Matrix2> =
        [256, 512, 1024, 2048].iter().map(|&n| wilson_line(&LoopSpec::c1(1.0, 1.0, n).unwrap()).unwrap()).collect();
    let mut worst_ratio = f64::INFINITY;
    for alpha in grid(1.0, 8.0, 29) {
        for beta in grid(0.0, 1.0, 21) {
            let u = wilson_line(&LoopSpec::c2(1.0, 1.0, alpha, beta, DEFAULT_STEPS).unwrap()).unwrap();
            assert!(unitarity_defect(&u) <= 1e-9);
            let us: Vec<Matrix2> = [256, 512, 1024, 2048]
                .iter()
                .map(|&n| wilson_line(&LoopSpec::c2(1.0, 1.0, alpha, beta, n).unwrap()).unwrap())
                .collect();
            for k in 0..2 {
                let ratio = us[k].max_abs_diff(&us[k + 1]) / us[k + 1].max_abs_diff(&us[k + 2]);
                worst_ratio = worst_ratio.min(ratio);
            }
        }
    }
    for k in 0..2 {
        let ratio = u1[k].max_abs_diff(&u1[k + 1]) / u1[k + 1].max_abs_diff(&u1[k + 2]);
        worst_ratio = worst_ratio.min(ratio);
    }
    assert!(worst_ratio >= 3.0, "worst ratio {worst_ratio}");
}

#[test]
fn midpoint_rule_is_second_order() {
    let spec = LoopSpec::c2(1.0, 1.0, 6.0, 0.9, 2).unwrap();
    let u: Vec<Matrix2> = [512, 1024, 2048]
        .iter()
        .map(|&n| wilson_line_with(&spec.with_steps(n).unwrap(), StepRule::Midpoint).unwrap())
        .collect();
    let ratio = u[0].max_abs_diff(&u[1]) / u[1].max_abs_diff(&u[2]);
    assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");
    let fine = wilson_line(&spec.with_steps(4096).unwrap()).unwrap();
    assert!(u[2].max_abs_diff(&fine) < 1e-5);
}

#[test]
fn sweep_is_deterministic_across_thread_counts() {
    let alphas = grid(1.0, 8.0, 8);
    let betas = grid(0.0, 1.0, 6);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| sweep_pd(&alphas, &betas, 512).unwrap())
    };
    let one = run(1);
    let many = run(4);
    assert_eq!(one, many);
    for (i, &a) in alphas.iter().enumerate() {
        for (j, &b) in betas.iter().enumerate() {
            let pd = loop_pair(a, b, 512).unwrap().p_d;
            assert_eq!(one.p_d[i][j].to_bits(), pd.to_bits());
        }
    }
}

#[test]
fn composition_matches_hand_products() {
    let u1 = pauli_rotation(&pauli::x(), 0.4);
    let u2 = pauli_rotation(&pauli::z(), 1.1);
    let h = compose_orders(&u1, &u2).unwrap();
    assert_eq!(h.u_12, u2 * u1);
    assert_eq!(h.u_21, u1 * u2);
    assert!((h.p - (u2 * u1)[(1, 1)].norm_sqr()).abs() < 1e-15);
}
