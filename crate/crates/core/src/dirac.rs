//! Dirac Hamiltonian with tensor and pseudotensor external fields, realized on
//! the two-qubit basis `(|a⟩,|b⟩,|c⟩,|d⟩) = (|00⟩,|01⟩,|10⟩,|11⟩)`.
//!
//! Representation: `β = σ_z⊗I`, `α_i = σ_x⊗σ_i`, `Σ_i = I⊗σ_i`. Qubit 1 carries
//! parity and qubit 2 carries spin. Units are natural (`ħ = c = 1`); momentum
//! points along x and the electric field lies in the xy-plane at angle θ.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{identity2, identity4, kron, pauli_x, pauli_y, pauli_z, ComplexMatrix, I};

/// Threshold on `g₂` and `|λ|` below which the analytic projectors are refused.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Tolerance on θ for the closed-form spectrum, which assumes θ = π/4.
pub const THETA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiracParams {
    /// Rest mass.
    pub m: f64,
    /// Momentum magnitude along x.
    pub p: f64,
    /// Tensor coupling κ.
    pub kappa: f64,
    /// Pseudotensor coupling μ.
    pub mu: f64,
    /// Electric field magnitude ℰ.
    pub e_field: f64,
    /// Field angle in the xy-plane, radians.
    pub theta: f64,
}

impl Default for DiracParams {
    fn default() -> Self {
        Self {
            m: 0.0,
            p: 1.0,
            kappa: 1.0,
            mu: 1.0,
            e_field: 1.0,
            theta: FRAC_PI_4,
        }
    }
}

impl DiracParams {
    pub fn new(m: f64, p: f64, kappa: f64, mu: f64, e_field: f64, theta: f64) -> Result<Self> {
        let params = Self {
            m,
            p,
            kappa,
            mu,
            e_field,
            theta,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("m", self.m),
            ("p", self.p),
            ("kappa", self.kappa),
            ("mu", self.mu),
            ("E_field", self.e_field),
            ("theta", self.theta),
        ];
        if let Some((name, value)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("{name} must be finite, got {value}")));
        }
        for (name, value) in [("m", self.m), ("p", self.p), ("E_field", self.e_field)] {
            if value < 0.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} must be non-negative, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Whether θ is the in-plane angle the closed-form spectrum assumes.
    pub fn is_closed_form_configuration(&self) -> bool {
        (self.theta - FRAC_PI_4).abs() <= THETA_TOL
    }

    /// Cartesian components of the electric field.
    pub fn field_vector(&self) -> [f64; 3] {
        [
            self.e_field * self.theta.cos(),
            self.e_field * self.theta.sin(),
            0.0,
        ]
    }

    /// z-component of `p × ℰ`, the only non-zero one in this geometry.
    pub fn p_cross_e(&self) -> f64 {
        self.p * self.e_field * self.theta.sin()
    }
}

/// `β = σ_z ⊗ I`.
pub fn beta() -> ComplexMatrix {
    kron(&pauli_z(), &identity2())
}

/// `(α_x, α_y, α_z)` with `α_i = σ_x ⊗ σ_i`.
pub fn alphas() -> [ComplexMatrix; 3] {
    let sx = pauli_x();
    [kron(&sx, &sx), kron(&sx, &pauli_y()), kron(&sx, &pauli_z())]
}

/// `(Σ_x, Σ_y, Σ_z)` with `Σ_i = I ⊗ σ_i`.
pub fn sigmas() -> [ComplexMatrix; 3] {
    let id = identity2();
    [kron(&id, &pauli_x()), kron(&id, &pauli_y()), kron(&id, &pauli_z())]
}

/// `H = βm + α_x p + β Σ·(κℰ) + iβ α·(μℰ)`.
pub fn build_dirac_hamiltonian(params: &DiracParams) -> Result<ComplexMatrix> {
    params.validate()?;
    let b = beta();
    let [ax, ay, _] = alphas();
    let [sx, sy, _] = sigmas();
    let [ex, ey, _] = params.field_vector();

    let tensor = sx * (params.kappa * ex) + sy * (params.kappa * ey);
    let pseudo = ax * (params.mu * ex) + ay * (params.mu * ey);
    let h = b * params.m + ax * params.p + b * tensor + (b * pseudo) * I;
    Ok(h)
}

/// The operator `Ô = mκ Σ·ℰ + μ β Σ·(p×ℰ) − iκ β α·(p×ℰ)`, which commutes with
/// the Hamiltonian and equals the traceless part of `H²/2`.
pub fn build_invariant_operator(params: &DiracParams) -> Result<ComplexMatrix> {
    params.validate()?;
    let b = beta();
    let [_, _, az] = alphas();
    let [sx, sy, sz] = sigmas();
    let [ex, ey, _] = params.field_vector();
    let cross = params.p_cross_e();

    let o = (sx * ex + sy * ey) * (params.m * params.kappa)
        + (b * sz) * (params.mu * cross)
        + (b * az) * Complex64::new(0.0, -params.kappa * cross);
    Ok(o)
}

/// `H² − ¼Tr[H²]·I`.
fn traceless_square(h: &ComplexMatrix) -> ComplexMatrix {
    let h2 = *h * *h;
    h2 - identity4() * (h2.trace().re / 4.0)
}

/// `g₂ = (1/16)·Tr[(H² − ¼Tr[H²])²]`, evaluated from matrices.
pub fn compute_g2(params: &DiracParams) -> Result<f64> {
    let h = build_dirac_hamiltonian(params)?;
    let k = traceless_square(&h);
    Ok((k * k).trace().re / 16.0)
}

/// `g₂` from its closed form at θ = π/4.
pub fn g2_closed_form(params: &DiracParams) -> Result<f64> {
    params.validate()?;
    require_closed_form(params)?;
    let DiracParams {
        m, p, kappa, mu, e_field, ..
    } = *params;
    Ok(e_field * e_field * (m * m * kappa * kappa + 0.5 * (mu * mu + kappa * kappa) * p * p))
}

fn require_closed_form(params: &DiracParams) -> Result<()> {
    if params.is_closed_form_configuration() {
        Ok(())
    } else {
        Err(Error::UnsupportedConfiguration(format!(
            "closed-form spectrum requires theta = pi/4, got {}; use the numeric path",
            params.theta
        )))
    }
}

fn sign(k: u8) -> f64 {
    if k == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_index(name: &str, k: u8) -> Result<()> {
    if k <= 1 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} must be 0 or 1, got {k}")))
    }
}

/// Closed-form energy `λ_{n,s}` at θ = π/4.
pub fn eigenvalue_closed_form(params: &DiracParams, n: u8, s: u8) -> Result<f64> {
    params.validate()?;
    check_index("n", n)?;
    check_index("s", s)?;
    require_closed_form(params)?;
    let DiracParams {
        m, p, kappa, mu, e_field, ..
    } = *params;
    let inner = m * m * kappa * kappa + 0.5 * (mu * mu + kappa * kappa) * p * p;
    let radicand = p * p
        + m * m
        + (kappa * kappa + mu * mu) * e_field * e_field
        + 2.0 * sign(s) * e_field * inner.sqrt();
    if radicand < 0.0 {
        // A sum of squares minus a bounded cross term; only roundoff lands here.
        if radicand > -1e-14 * (p * p + m * m + 1.0) {
            return Ok(0.0);
        }
        return Err(Error::NumericDomain(format!(
            "negative radicand {radicand} for lambda_({n},{s})"
        )));
    }
    Ok(sign(n) * radicand.sqrt())
}

/// The four energies, the invariant `g₂`, and the rank-one eigenprojectors
/// `ϱ_{n,s}`. Arrays are indexed by `2n + s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub g2: f64,
    pub lambdas: [f64; 4],
    pub projectors: [ComplexMatrix; 4],
}

impl SpectralData {
    pub fn lambda(&self, n: u8, s: u8) -> f64 {
        self.lambdas[usize::from(2 * n + s)]
    }

    pub fn projector(&self, n: u8, s: u8) -> &ComplexMatrix {
        &self.projectors[usize::from(2 * n + s)]
    }

    /// Worst deviation over completeness, orthogonality/idempotence, unit
    /// trace, and the eigen-relation `Hϱ = λϱ`.
    pub fn max_invariant_error(&self, h: &ComplexMatrix) -> f64 {
        let mut err: f64 = 0.0;
        let sum = self
            .projectors
            .iter()
            .fold(ComplexMatrix::zeros(4).expect("4x4"), |acc, p| acc + *p);
        err = err.max(sum.max_abs_diff(&identity4()));
        for (k, pk) in self.projectors.iter().enumerate() {
            err = err.max((pk.trace() - 1.0).norm());
            err = err.max((*h * *pk).max_abs_diff(&(*pk * self.lambdas[k])));
            err = err.max(((*h * *pk).trace() - self.lambdas[k]).norm());
            for (j, pj) in self.projectors.iter().enumerate() {
                let expected = if j == k { *pk } else { ComplexMatrix::zeros(4).expect("4x4") };
                err = err.max((*pk * *pj).max_abs_diff(&expected));
            }
        }
        err
    }
}

/// Analytic eigenprojectors
/// `ϱ_{n,s} = ¼[I + (−1)ⁿ H/|λ_{n,s}|][I + (−1)ˢ Ô/√g₂]`.
///
/// The energies come from `λ² = ¼Tr[H²] + 2(−1)ˢ√g₂`, which coincides with
/// the closed form at θ = π/4 and stays valid for any in-plane angle.
pub fn eigenprojectors(params: &DiracParams) -> Result<SpectralData> {
    let h = build_dirac_hamiltonian(params)?;
    let o = build_invariant_operator(params)?;
    let g2 = {
        let k = traceless_square(&h);
        (k * k).trace().re / 16.0
    };
    if g2 <= DEGENERACY_TOL {
        return Err(Error::DegenerateSpectrum(format!("g2 = {g2:.3e}")));
    }
    let root_g2 = g2.sqrt();
    let quarter_trace = (h * h).trace().re / 4.0;

    let id = identity4();
    let mut lambdas = [0.0; 4];
    let mut projectors = [ComplexMatrix::zeros(4)?; 4];
    for n in 0..2u8 {
        for s in 0..2u8 {
            let squared = quarter_trace + 2.0 * sign(s) * root_g2;
            if squared <= DEGENERACY_TOL * DEGENERACY_TOL {
                return Err(Error::DegenerateSpectrum(format!(
                    "lambda_({n},{s}) = {:.3e}",
                    squared.max(0.0).sqrt()
                )));
            }
            let magnitude = squared.sqrt();
            let k = usize::from(2 * n + s);
            lambdas[k] = sign(n) * magnitude;
            let energy_part = id + h * (sign(n) / magnitude);
            let invariant_part = id + o * (sign(s) / root_g2);
            projectors[k] = (energy_part * invariant_part) * 0.25;
        }
    }
    Ok(SpectralData {
        g2,
        lambdas,
        projectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, tensor_product};

    fn params(m: f64, p: f64, kappa: f64, mu: f64, e: f64) -> DiracParams {
        DiracParams::new(m, p, kappa, mu, e, FRAC_PI_4).unwrap()
    }

    #[test]
    fn mass_term_only() {
        let h = build_dirac_hamiltonian(&params(1.0, 0.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(h, ComplexMatrix::from_diagonal(&[1.0, 1.0, -1.0, -1.0]).unwrap());
    }

    #[test]
    fn kinetic_term_only() {
        let h = build_dirac_hamiltonian(&params(0.0, 1.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(h, tensor_product(&pauli_x(), &pauli_x()).unwrap());
    }

    #[test]
    fn dirac_algebra() {
        let b = beta();
        let a = alphas();
        let id = identity4();
        assert!((b * b).max_abs_diff(&id) < 1e-15);
        for i in 0..3 {
            assert!((b * a[i] + a[i] * b).max_abs() < 1e-15);
            for j in 0..3 {
                let anti = a[i] * a[j] + a[j] * a[i];
                let expected = if i == j { id * 2.0 } else { id * 0.0 };
                assert!(anti.max_abs_diff(&expected) < 1e-15);
            }
        }
        // Σ_z = −i α_x α_y
        let [ax, ay, _] = a;
        let sz = sigmas()[2];
        assert!(((ax * ay) * Complex64::new(0.0, -1.0)).max_abs_diff(&sz) < 1e-15);
    }

    #[test]
    fn reference_spectrum() {
        let h = build_dirac_hamiltonian(&params(0.0, 1.0, 1.0, 1.0, 1.0)).unwrap();
        assert!(h.hermitian_deviation() < 1e-12);
        let values = hermitian_eigenvalues(&h).unwrap();
        let r5 = 5f64.sqrt();
        for (v, e) in values.iter().zip([-r5, -1.0, 1.0, r5]) {
            assert!((v - e).abs() < 1e-12, "{values:?}");
        }
    }

    #[test]
    fn invariant_operator_examples() {
        let o = build_invariant_operator(&params(2.0, 1.5, 0.0, 0.0, 1.0)).unwrap();
        assert_eq!(o.max_abs(), 0.0);

        let o = build_invariant_operator(&params(0.0, 1.0, 1.0, 1.0, 1.0)).unwrap();
        let values = hermitian_eigenvalues(&o).unwrap();
        for (v, e) in values.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn invariant_operator_identity_any_angle() {
        for &theta in &[0.0, 0.3, FRAC_PI_4, 1.2, 2.5] {
            let p = DiracParams::new(0.7, 1.3, 0.6, -0.4, 1.7, theta).unwrap();
            let h = build_dirac_hamiltonian(&p).unwrap();
            let o = build_invariant_operator(&p).unwrap();
            assert!(o.hermitian_deviation() < 1e-12);
            assert!(o.commutator(&h).max_abs() < 1e-10);
            assert!(o.max_abs_diff(&(traceless_square(&h) * 0.5)) < 1e-10);
        }
    }

    #[test]
    fn g2_examples() {
        assert_eq!(compute_g2(&params(1.0, 1.0, 1.0, 1.0, 0.0)).unwrap(), 0.0);
        assert!((compute_g2(&params(0.0, 1.0, 1.0, 1.0, 1.0)).unwrap() - 1.0).abs() < 1e-12);
        assert!((compute_g2(&params(1.0, 1.0, 1.0, 1.0, 1.0)).unwrap() - 2.0).abs() < 1e-12);
        assert!((g2_closed_form(&params(1.0, 1.0, 1.0, 1.0, 1.0)).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_eigenvalues() {
        let p = params(0.0, 1.0, 1.0, 1.0, 1.0);
        let r5 = 5f64.sqrt();
        let expect = [(0, 0, r5), (0, 1, 1.0), (1, 0, -r5), (1, 1, -1.0)];
        for (n, s, e) in expect {
            assert!((eigenvalue_closed_form(&p, n, s).unwrap() - e).abs() < 1e-14);
        }
        let p = params(1.0, 1.0, 1.0, 1.0, 1.0);
        let r2 = 2f64.sqrt();
        assert!((eigenvalue_closed_form(&p, 0, 0).unwrap() - (4.0 + 2.0 * r2).sqrt()).abs() < 1e-14);
        assert!((eigenvalue_closed_form(&p, 0, 1).unwrap() - (4.0 - 2.0 * r2).sqrt()).abs() < 1e-14);

        let p = params(3.0, 4.0, 1.0, 1.0, 0.0);
        for (n, s) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert!((eigenvalue_closed_form(&p, n, s).unwrap().abs() - 5.0).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_guards() {
        let off = DiracParams::new(0.0, 1.0, 1.0, 1.0, 1.0, 0.3).unwrap();
        assert!(matches!(
            eigenvalue_closed_form(&off, 0, 0),
            Err(Error::UnsupportedConfiguration(_))
        ));
        assert!(matches!(g2_closed_form(&off), Err(Error::UnsupportedConfiguration(_))));
        let p = params(0.0, 1.0, 1.0, 1.0, 1.0);
        assert!(eigenvalue_closed_form(&p, 2, 0).is_err());
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(DiracParams::new(-1.0, 1.0, 1.0, 1.0, 1.0, 0.0).is_err());
        assert!(DiracParams::new(0.0, f64::NAN, 1.0, 1.0, 1.0, 0.0).is_err());
        let bad = DiracParams {
            e_field: -1.0,
            ..DiracParams::default()
        };
        assert!(build_dirac_hamiltonian(&bad).is_err());
        assert!(build_invariant_operator(&bad).is_err());
    }

    #[test]
    fn projectors_reference_point() {
        let p = params(0.0, 1.0, 1.0, 1.0, 1.0);
        let h = build_dirac_hamiltonian(&p).unwrap();
        let spectral = eigenprojectors(&p).unwrap();
        assert!(spectral.max_invariant_error(&h) <= 1e-10);
        assert!((*spectral.projector(0, 0) * *spectral.projector(1, 1)).max_abs() <= 1e-10);
        for k in 0..4 {
            assert!(spectral.projectors[k].hermitian_deviation() < 1e-12);
            let values = hermitian_eigenvalues(&spectral.projectors[k]).unwrap();
            assert!((values[3] - 1.0).abs() < 1e-10);
            assert!(values[..3].iter().all(|v| v.abs() < 1e-10));
        }
        for n in 0..2 {
            for s in 0..2 {
                let closed = eigenvalue_closed_form(&p, n, s).unwrap();
                assert!((spectral.lambda(n, s) - closed).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn projectors_degenerate() {
        assert!(matches!(
            eigenprojectors(&params(1.0, 1.0, 1.0, 1.0, 0.0)),
            Err(Error::DegenerateSpectrum(_))
        ));
        assert!(matches!(
            eigenprojectors(&params(0.0, 0.0, 0.0, 0.0, 0.0)),
            Err(Error::DegenerateSpectrum(_))
        ));
    }
}
