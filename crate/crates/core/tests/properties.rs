use std::f64::consts::PI;

use bispinor_core::linalg::{identity2, paulis};
use bispinor_core::noise::build_kraus_set;
use bispinor_core::{
    apply_channel, build_dirac_hamiltonian, eigenprojectors, evolve_noisy, geometric_discord,
    negativity, purity, tensor_product, Complex64, ComplexMatrix, DensityMatrix, DiracParams,
    InitialState, NoiseParams, Subsystem,
};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// SU(2) element from three Euler-type angles.
fn su2(a: f64, b: f64, g: f64) -> ComplexMatrix {
    let (s, co) = (a / 2.0).sin_cos();
    let e1 = Complex64::from_polar(1.0, (b + g) / 2.0);
    let e2 = Complex64::from_polar(1.0, (b - g) / 2.0);
    ComplexMatrix::from_row_major(2, &[e1 * co, -e2.conj() * s, e2 * s, e1.conj() * co]).unwrap()
}

/// Single-qubit state from a Bloch vector scaled into the unit ball.
fn qubit(r: [f64; 3]) -> ComplexMatrix {
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt().max(1.0);
    let [x, y, z] = r.map(|v| v / norm);
    let [sx, sy, sz] = paulis();
    (identity2() + sx * x + sy * y + sz * z) * 0.5
}

fn state4(amps: [f64; 8]) -> DensityMatrix {
    let psi: Vec<Complex64> = (0..4).map(|k| c(amps[2 * k], amps[2 * k + 1])).collect();
    DensityMatrix::pure(&psi).unwrap()
}

fn amps() -> impl Strategy<Value = [f64; 8]> {
    prop::array::uniform8(-1.0f64..1.0).prop_filter("non-zero", |a| {
        a.iter().map(|x| x * x).sum::<f64>() > 1e-2
    })
}

fn bloch() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0f64..1.0)
}

fn matrix2() -> impl Strategy<Value = ComplexMatrix> {
    prop::array::uniform8(-2.0f64..2.0).prop_map(|v| {
        let entries: Vec<Complex64> = (0..4).map(|k| c(v[2 * k], v[2 * k + 1])).collect();
        ComplexMatrix::from_row_major(2, &entries).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn measures_are_local_unitary_invariant(
        a in amps(),
        u in prop::array::uniform3(0.0f64..2.0 * PI),
        v in prop::array::uniform3(0.0f64..2.0 * PI),
    ) {
        let rho = state4(a);
        let local = tensor_product(&su2(u[0], u[1], u[2]), &su2(v[0], v[1], v[2])).unwrap();
        let rotated = DensityMatrix::new(local * *rho.matrix() * local.adjoint()).unwrap();
        prop_assert!((negativity(&rho).unwrap() - negativity(&rotated).unwrap()).abs() < 1e-10);
        for side in [Subsystem::First, Subsystem::Second] {
            let d0 = geometric_discord(&rho, side).unwrap();
            let d1 = geometric_discord(&rotated, side).unwrap();
            prop_assert!((d0 - d1).abs() < 1e-10);
        }
    }

    #[test]
    fn separable_mixtures_have_zero_negativity(
        weights in prop::array::uniform3(0.01f64..1.0),
        r1 in prop::array::uniform3(bloch()),
        r2 in prop::array::uniform3(bloch()),
    ) {
        let total: f64 = weights.iter().sum();
        let mut rho = ComplexMatrix::zeros(4).unwrap();
        for k in 0..3 {
            rho += tensor_product(&qubit(r1[k]), &qubit(r2[k])).unwrap() * (weights[k] / total);
        }
        let rho = DensityMatrix::new(rho).unwrap();
        prop_assert!(negativity(&rho).unwrap() < 1e-10);
    }

    #[test]
    fn measure_ranges(a in amps()) {
        let rho = state4(a);
        let n = negativity(&rho).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-10).contains(&n));
        let d = geometric_discord(&rho, Subsystem::First).unwrap();
        prop_assert!((-1e-12..=0.5 + 1e-10).contains(&d));
        prop_assert!((n / 2.0).powi(2) <= d + 1e-9);
    }

    #[test]
    fn tensor_product_is_bilinear_and_mixed_product(
        a in matrix2(), b in matrix2(), c2 in matrix2(), d in matrix2(), s in -3.0f64..3.0,
    ) {
        let lhs = tensor_product(&(a + c2 * s), &b).unwrap();
        let rhs = tensor_product(&a, &b).unwrap() + tensor_product(&c2, &b).unwrap() * s;
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let lhs = tensor_product(&a, &b).unwrap() * tensor_product(&c2, &d).unwrap();
        let rhs = tensor_product(&(a * c2), &(b * d)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-11);
    }

    #[test]
    fn channel_never_raises_purity(a in amps(), gamma in 0.0f64..3.0, t in 0.0f64..10.0) {
        let rho = state4(a);
        let kraus = build_kraus_set(&NoiseParams::new(gamma).unwrap(), t).unwrap();
        let out = apply_channel(&rho, &kraus).unwrap();
        prop_assert!(purity(&out) <= purity(&rho) + 1e-12);
        prop_assert!(purity(&out) >= 0.25 - 1e-12);
    }

    #[test]
    fn channel_is_a_semigroup(a in amps(), gamma in 0.0f64..3.0, t1 in 0.0f64..5.0, t2 in 0.0f64..5.0) {
        let rho = state4(a);
        let noise = NoiseParams::new(gamma).unwrap();
        let step = |r: &DensityMatrix, t: f64| apply_channel(r, &build_kraus_set(&noise, t).unwrap()).unwrap();
        let two = step(&step(&rho, t1), t2);
        let one = step(&rho, t1 + t2);
        prop_assert!(two.matrix().max_abs_diff(one.matrix()) < 1e-12);
    }

    #[test]
    fn noisy_evolution_stays_physical(
        m in 0.0f64..5.0, e in 0.1f64..3.0, gamma in 0.0f64..2.0, t in 0.0f64..30.0,
        state in prop::sample::select(vec![InitialState::A, InitialState::Cat, InitialState::Werner]),
    ) {
        let params = DiracParams::new(m, 1.0, 1.0, 1.0, e, PI / 4.0).unwrap();
        let rho0 = state.density_matrix().unwrap();
        let rho = evolve_noisy(&rho0, &params, &NoiseParams::new(gamma).unwrap(), t).unwrap();
        let diag = rho.diagnostics().unwrap();
        prop_assert!(diag.violation().is_none(), "{:?}", diag);
    }

    #[test]
    fn projectors_resolve_the_hamiltonian(
        m in 0.0f64..10.0, e in 0.1f64..3.0, kappa in 0.1f64..2.0, mu in 0.1f64..2.0, theta in 0.0f64..2.0 * PI,
    ) {
        let params = DiracParams::new(m, 1.0, kappa, mu, e, theta).unwrap();
        let h = build_dirac_hamiltonian(&params).unwrap();
        if let Ok(spectral) = eigenprojectors(&params) {
            let mut sum = ComplexMatrix::zeros(4).unwrap();
            for (p, lambda) in spectral.projectors.iter().zip(spectral.lambdas) {
                sum += *p * lambda;
            }
            prop_assert!(sum.max_abs_diff(&h) < 1e-8 * h.max_abs().max(1.0));
        }
    }
}
