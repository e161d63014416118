//! Local dephasing noise and the noisy Dirac dynamics.
//!
//! Each qubit dephases with the same rate Γ. The channel is applied once at
//! elapsed time `t` to the initial state, followed by the unitary rotation
//! `U(t) = exp(−iH_D t)`:
//!
//! `ρ(t) = U(t) · Σ_{μν} (F_ν E_μ) ρ₀ (F_ν E_μ)† · U(t)†`
//!
//! With `Γ = 0` this is exactly the noiseless projector-sum evolution.

use serde::{Deserialize, Serialize};

use crate::dirac::{build_dirac_hamiltonian, eigenprojectors, DiracParams, SpectralData};
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigensystem, identity2, identity4, kron, ComplexMatrix, EigenSystem,
    DEFAULT_EIGEN_TOL,
};
use crate::state::DensityMatrix;

/// Completeness tolerance for Kraus sets.
pub const KRAUS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    /// Phase relaxation rate Γ, shared by both qubits.
    pub gamma_rate: f64,
}

impl NoiseParams {
    pub fn new(gamma_rate: f64) -> Result<Self> {
        let noise = Self { gamma_rate };
        noise.validate()?;
        Ok(noise)
    }

    pub fn noiseless() -> Self {
        Self { gamma_rate: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.gamma_rate.is_finite() || self.gamma_rate < 0.0 {
            return Err(Error::InvalidParams(format!(
                "dephasing rate must be finite and non-negative, got {}",
                self.gamma_rate
            )));
        }
        Ok(())
    }
}

/// The four products `F_ν E_μ` of the single-qubit dephasing operators
/// `E₁ = diag(1,γ)⊗I`, `E₂ = diag(0,ω)⊗I`, `F₁ = I⊗diag(1,γ)`, `F₂ = I⊗diag(0,ω)`,
/// ordered `(μ,ν) = (1,1), (1,2), (2,1), (2,2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    pub operators: [ComplexMatrix; 4],
    /// `γ = e^{−Γt/2}`.
    pub gamma_factor: f64,
    /// `ω = √(1 − e^{−Γt})`.
    pub omega_factor: f64,
}

impl KrausSet {
    /// `‖Σ K†K − I‖_max`.
    pub fn completeness_deviation(&self) -> f64 {
        let sum = self
            .operators
            .iter()
            .fold(ComplexMatrix::zeros(4).expect("4x4"), |acc, k| acc + k.adjoint() * *k);
        sum.max_abs_diff(&identity4())
    }
}

pub fn build_kraus_set(noise: &NoiseParams, t: f64) -> Result<KrausSet> {
    noise.validate()?;
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    let gamma = (-noise.gamma_rate * t / 2.0).exp();
    // −expm1 keeps ω accurate for small Γt.
    let omega = (-(-noise.gamma_rate * t).exp_m1()).sqrt();

    let keep = ComplexMatrix::from_diagonal(&[1.0, gamma])?;
    let flip = ComplexMatrix::from_diagonal(&[0.0, omega])?;
    let id = identity2();
    let e = [kron(&keep, &id), kron(&flip, &id)];
    let f = [kron(&id, &keep), kron(&id, &flip)];

    let operators = [f[0] * e[0], f[1] * e[0], f[0] * e[1], f[1] * e[1]];
    Ok(KrausSet {
        operators,
        gamma_factor: gamma,
        omega_factor: omega,
    })
}

/// `ρ ↦ Σ K ρ K†`.
pub fn apply_channel(rho: &DensityMatrix, kraus: &KrausSet) -> Result<DensityMatrix> {
    let deviation = kraus.completeness_deviation();
    if !(deviation <= KRAUS_TOL) {
        return Err(Error::IncompleteKraus { deviation });
    }
    let r = *rho.matrix();
    let out = kraus
        .operators
        .iter()
        .fold(ComplexMatrix::zeros(4)?, |acc, k| acc + *k * r * k.adjoint());
    Ok(DensityMatrix::from_evolved(out))
}

/// Elementwise decay factors `c_{kl}` of the dephasing channel:
/// a coherence between levels differing on `h` qubits decays as `γ^h`.
pub fn coherence_factors(gamma: f64) -> [[f64; 4]; 4] {
    let mut c = [[0.0; 4]; 4];
    for (k, row) in c.iter_mut().enumerate() {
        for (l, entry) in row.iter_mut().enumerate() {
            *entry = gamma.powi((k ^ l).count_ones() as i32);
        }
    }
    c
}

/// Precomputed spectral data for repeated evolution under one Hamiltonian.
#[derive(Debug, Clone)]
pub struct Propagator {
    params: DiracParams,
    hamiltonian: ComplexMatrix,
    eigensystem: EigenSystem,
    spectral: Option<SpectralData>,
}

impl Propagator {
    pub fn new(params: &DiracParams) -> Result<Self> {
        let hamiltonian = build_dirac_hamiltonian(params)?;
        let eigensystem = hermitian_eigensystem(&hamiltonian, DEFAULT_EIGEN_TOL)?;
        let spectral = match eigenprojectors(params) {
            Ok(data) => Some(data),
            Err(Error::DegenerateSpectrum(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            params: *params,
            hamiltonian,
            eigensystem,
            spectral,
        })
    }

    pub fn params(&self) -> &DiracParams {
        &self.params
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    /// Analytic projectors, when the spectrum is nondegenerate.
    pub fn spectral(&self) -> Option<&SpectralData> {
        self.spectral.as_ref()
    }

    pub fn unitary(&self, t: f64) -> ComplexMatrix {
        self.eigensystem.evolution_operator(t)
    }

    /// `U ρ U†` with `U` from numeric diagonalization.
    pub fn rotate(&self, rho: &DensityMatrix, t: f64) -> DensityMatrix {
        let u = self.unitary(t);
        DensityMatrix::from_evolved(u * *rho.matrix() * u.adjoint())
    }

    /// Noiseless evolution. Uses the projector sum when the spectrum is
    /// nondegenerate and the unitary rotation otherwise.
    pub fn evolve_noiseless(&self, rho0: &DensityMatrix, t: f64) -> DensityMatrix {
        match &self.spectral {
            Some(data) => projector_sum(rho0, data, t),
            None => self.rotate(rho0, t),
        }
    }

    /// Dephasing channel at elapsed time `t`, then the unitary rotation.
    pub fn evolve_noisy(&self, rho0: &DensityMatrix, noise: &NoiseParams, t: f64) -> Result<DensityMatrix> {
        let kraus = build_kraus_set(noise, t)?;
        let dephased = apply_channel(rho0, &kraus)?;
        Ok(self.rotate(&dephased, t))
    }
}

/// `ρ(t) = Σ_{ns,ml} e^{−i(λ_{ns}−λ_{ml})t} ϱ_{ns} ρ₀ ϱ_{ml}`.
pub fn projector_sum(rho0: &DensityMatrix, spectral: &SpectralData, t: f64) -> DensityMatrix {
    let r = *rho0.matrix();
    let mut out = ComplexMatrix::zeros(4).expect("4x4");
    for (k, pk) in spectral.projectors.iter().enumerate() {
        let left = *pk * r;
        for (j, pj) in spectral.projectors.iter().enumerate() {
            let phase = num_complex::Complex64::from_polar(
                1.0,
                -(spectral.lambdas[k] - spectral.lambdas[j]) * t,
            );
            out += (left * *pj) * phase;
        }
    }
    DensityMatrix::from_evolved(out)
}

/// Noiseless evolution of `rho0` for time `t`.
pub fn evolve_noiseless(rho0: &DensityMatrix, params: &DiracParams, t: f64) -> Result<DensityMatrix> {
    if !t.is_finite() {
        return Err(Error::InvalidParams(format!("time must be finite, got {t}")));
    }
    Ok(Propagator::new(params)?.evolve_noiseless(rho0, t))
}

/// Noisy evolution `U(t) 𝓔_t(ρ₀) U(t)†`.
pub fn evolve_noisy(
    rho0: &DensityMatrix,
    params: &DiracParams,
    noise: &NoiseParams,
    t: f64,
) -> Result<DensityMatrix> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    Propagator::new(params)?.evolve_noisy(rho0, noise, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Subsystem;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, LN_2};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn cat() -> DensityMatrix {
        DensityMatrix::pure(&[c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)]).unwrap()
    }

    fn level_a() -> DensityMatrix {
        DensityMatrix::pure(&[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap()
    }

    fn reference(m: f64) -> DiracParams {
        DiracParams::new(m, 1.0, 1.0, 1.0, 1.0, FRAC_PI_4).unwrap()
    }

    #[test]
    fn identity_channel_cases() {
        for (gamma, t) in [(0.0, 3.0), (2.0, 0.0)] {
            let ks = build_kraus_set(&NoiseParams::new(gamma).unwrap(), t).unwrap();
            assert_eq!(ks.gamma_factor, 1.0);
            assert_eq!(ks.omega_factor, 0.0);
            assert_eq!(ks.operators[0], identity4());
            for k in &ks.operators[1..] {
                assert_eq!(k.max_abs(), 0.0);
            }
        }
    }

    #[test]
    fn half_decay_point() {
        let ks = build_kraus_set(&NoiseParams::new(1.0).unwrap(), 2.0 * LN_2).unwrap();
        assert!((ks.gamma_factor - 0.5).abs() < 1e-15);
        assert!((ks.omega_factor - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let expected = ComplexMatrix::from_diagonal(&[1.0, 0.5, 0.5, 0.25]).unwrap();
        assert!(ks.operators[0].max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn kraus_completeness_over_grid() {
        for gamma in [0.0, 0.1, 0.5, 1.0, 7.0] {
            for t in [0.0, 1e-9, 0.3, 1.0, 20.0, 1e4] {
                let ks = build_kraus_set(&NoiseParams::new(gamma).unwrap(), t).unwrap();
                assert!(ks.completeness_deviation() <= KRAUS_TOL);
                let g = ks.gamma_factor;
                let w = ks.omega_factor;
                assert!((g * g + w * w - 1.0).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn rejects_negative_time() {
        let noise = NoiseParams::new(0.5).unwrap();
        assert!(matches!(build_kraus_set(&noise, -1.0), Err(Error::NegativeTime(_))));
        assert!(matches!(
            evolve_noisy(&cat(), &reference(1.0), &noise, -0.1),
            Err(Error::NegativeTime(_))
        ));
        assert!(NoiseParams::new(-0.1).is_err());
    }

    #[test]
    fn rejects_incomplete_kraus_set() {
        let mut ks = build_kraus_set(&NoiseParams::new(1.0).unwrap(), 1.0).unwrap();
        ks.operators[3] = ComplexMatrix::zeros(4).unwrap();
        assert!(matches!(apply_channel(&cat(), &ks), Err(Error::IncompleteKraus { .. })));
    }

    #[test]
    fn channel_examples() {
        let identity = build_kraus_set(&NoiseParams::noiseless(), 1.0).unwrap();
        assert_eq!(apply_channel(&cat(), &identity).unwrap(), cat());

        let ks = build_kraus_set(&NoiseParams::new(1.0).unwrap(), 2.0 * LN_2).unwrap();
        let out = apply_channel(&cat(), &ks).unwrap();
        assert!((out.entry(0, 3) - c(0.125)).norm() < 1e-15);
        assert!((out.entry(0, 0) - c(0.5)).norm() < 1e-15);
        assert!((out.entry(3, 3) - c(0.5)).norm() < 1e-15);

        let ks = build_kraus_set(&NoiseParams::new(1.0).unwrap(), 1e4).unwrap();
        let psi = [c(0.5), Complex64::new(0.0, 0.5), c(-0.5), c(0.5)];
        let rho = DensityMatrix::pure(&psi).unwrap();
        let out = apply_channel(&rho, &ks).unwrap();
        let diagonal = ComplexMatrix::from_diagonal(&[0.25; 4]).unwrap();
        assert!(out.matrix().max_abs_diff(&diagonal) < 1e-15);
    }

    #[test]
    fn dagger_placement_is_irrelevant() {
        // K† ρ K and K ρ K† agree for real diagonal Kraus operators.
        let ks = build_kraus_set(&NoiseParams::new(0.8).unwrap(), 1.3).unwrap();
        let psi = [c(0.3), Complex64::new(0.1, 0.6), c(-0.5), Complex64::new(0.2, -0.4)];
        let rho = DensityMatrix::pure(&psi).unwrap();
        let r = *rho.matrix();
        let left = ks
            .operators
            .iter()
            .fold(ComplexMatrix::zeros(4).unwrap(), |acc, k| acc + k.adjoint() * r * *k);
        let standard = apply_channel(&rho, &ks).unwrap();
        assert!(left.max_abs_diff(standard.matrix()) < 1e-15);
    }

    #[test]
    fn channel_matches_elementwise_factors() {
        let psi = [c(0.3), Complex64::new(0.1, 0.6), c(-0.5), Complex64::new(0.2, -0.4)];
        let rho = DensityMatrix::pure(&psi).unwrap();
        for t in [0.1, 0.7, 3.0] {
            let ks = build_kraus_set(&NoiseParams::new(0.9).unwrap(), t).unwrap();
            let factors = coherence_factors(ks.gamma_factor);
            let out = apply_channel(&rho, &ks).unwrap();
            for k in 0..4 {
                for l in 0..4 {
                    let expected = rho.entry(k, l) * factors[k][l];
                    assert!((out.entry(k, l) - expected).norm() < 1e-15);
                }
            }
        }
        let g: f64 = 0.3;
        let f = coherence_factors(g);
        let expected = [
            [1.0, g, g, g * g],
            [g, 1.0, g * g, g],
            [g, g * g, 1.0, g],
            [g * g, g, g, 1.0],
        ];
        assert_eq!(f, expected);
    }

    #[test]
    fn noiseless_examples() {
        let params = reference(0.0);
        let rho = level_a();
        assert!(evolve_noiseless(&rho, &params, 0.0)
            .unwrap()
            .matrix()
            .max_abs_diff(rho.matrix())
            < 1e-12);

        let propagator = Propagator::new(&params).unwrap();
        let stationary = DensityMatrix::new(*propagator.spectral().unwrap().projector(0, 0)).unwrap();
        for t in [0.3, 2.0, 17.0] {
            let out = propagator.evolve_noiseless(&stationary, t);
            assert!(out.matrix().max_abs_diff(stationary.matrix()) < 1e-10);
        }

        for t in [0.5, 1.0, 5.0] {
            let a = propagator.evolve_noiseless(&rho, t);
            let b = propagator.rotate(&rho, t);
            assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-10);
            assert!((a.diagnostics().unwrap().purity - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn degenerate_spectrum_falls_back_to_rotation() {
        let params = DiracParams::new(1.0, 1.0, 1.0, 1.0, 0.0, FRAC_PI_4).unwrap();
        let propagator = Propagator::new(&params).unwrap();
        assert!(propagator.spectral().is_none());
        let out = propagator.evolve_noiseless(&level_a(), 1.0);
        assert!((out.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noisy_examples() {
        let params = reference(1.0);
        let rho = level_a();
        let propagator = Propagator::new(&params).unwrap();
        for t in [0.0, 0.5, 4.0] {
            let quiet = propagator.evolve_noisy(&rho, &NoiseParams::noiseless(), t).unwrap();
            let reference = propagator.evolve_noiseless(&rho, t);
            assert!(quiet.matrix().max_abs_diff(reference.matrix()) <= 1e-10);
        }
        let noisy = propagator.evolve_noisy(&cat(), &NoiseParams::new(0.5).unwrap(), 0.0).unwrap();
        assert!(noisy.matrix().max_abs_diff(cat().matrix()) < 1e-12);
    }

    #[test]
    fn channel_only_dynamics() {
        // H_D = 0: only the dephasing acts.
        let params = DiracParams::new(0.0, 0.0, 0.0, 0.0, 0.0, FRAC_PI_4).unwrap();
        let out = evolve_noisy(&cat(), &params, &NoiseParams::new(1.0).unwrap(), 2.0 * LN_2).unwrap();
        assert!((out.entry(0, 3) - c(0.125)).norm() < 1e-14);
        let pt = crate::linalg::partial_transpose(out.matrix(), Subsystem::First).unwrap();
        let values = crate::linalg::hermitian_eigenvalues(&pt).unwrap();
        for (v, e) in values.iter().zip([-0.125, 0.125, 0.5, 0.5]) {
            assert!((v - e).abs() < 1e-14);
        }
    }
}
