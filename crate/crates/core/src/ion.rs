//! Trapped-ion realization of the Dirac Hamiltonian.
//!
//! The four internal levels `a, b, c, d` carry Pauli operators on level pairs.
//! Mass and kinetic terms come from sideband couplings, the tensor and
//! pseudotensor fields from two carrier channels. Momentum is a c-number here.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirac::DiracParams;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, I, ONE};

/// Tolerance for the parallel/coplanar checks in [`ion_to_dirac`].
pub const GEOMETRY_TOL: f64 = 1e-10;

/// Internal level index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IonParams {
    /// Detuning δ.
    pub delta: f64,
    /// Combined sideband coupling ηΔΩ̃; the simulated speed of light is twice this.
    pub eta_delta_omega: f64,
    /// Carrier frequencies of the tensor channel, `(x, y, z)`.
    pub omega1: [f64; 3],
    /// Carrier frequencies of the pseudotensor channel, `(x, y, z)`.
    pub omega2: [f64; 3],
}

impl IonParams {
    pub fn validate(&self) -> Result<()> {
        let all = [self.delta, self.eta_delta_omega]
            .into_iter()
            .chain(self.omega1)
            .chain(self.omega2);
        if all.into_iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("ion parameters must be finite".into()));
        }
        if self.delta < 0.0 {
            return Err(Error::InvalidParams(format!(
                "detuning must be non-negative, got {}",
                self.delta
            )));
        }
        Ok(())
    }
}

/// `σ_x^{jk} = |j⟩⟨k| + |k⟩⟨j|`.
pub fn sigma_x_pair(j: Level, k: Level) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4).expect("4x4");
    m[(j as usize, k as usize)] = ONE;
    m[(k as usize, j as usize)] = ONE;
    m
}

/// `σ_y^{jk} = −i|j⟩⟨k| + i|k⟩⟨j|`.
pub fn sigma_y_pair(j: Level, k: Level) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4).expect("4x4");
    m[(j as usize, k as usize)] = -I;
    m[(k as usize, j as usize)] = I;
    m
}

/// `σ_z^{jk} = |j⟩⟨j| − |k⟩⟨k|`.
pub fn sigma_z_pair(j: Level, k: Level) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4).expect("4x4");
    m[(j as usize, j as usize)] = ONE;
    m[(k as usize, k as usize)] = -ONE;
    m
}

/// Kinetic operator along one axis, per unit of `2ηΔΩ̃·p_j`:
/// x → `σ_x^{ad} + σ_x^{bc}`, y → `σ_y^{ad} − σ_y^{bc}`, z → `σ_x^{ac} − σ_x^{bd}`.
pub fn kinetic_operator(axis: usize) -> ComplexMatrix {
    use Level::*;
    match axis {
        0 => sigma_x_pair(A, D) + sigma_x_pair(B, C),
        1 => sigma_y_pair(A, D) - sigma_y_pair(B, C),
        2 => sigma_x_pair(A, C) - sigma_x_pair(B, D),
        _ => panic!("axis must be 0, 1 or 2"),
    }
}

/// Tensor-channel operators multiplying `2Ω_j^{(1)}`.
pub fn tensor_operators() -> [ComplexMatrix; 3] {
    use Level::*;
    [
        sigma_x_pair(A, B) - sigma_x_pair(C, D),
        sigma_y_pair(A, B) - sigma_y_pair(C, D),
        sigma_z_pair(A, B) - sigma_z_pair(C, D),
    ]
}

/// Pseudotensor-channel operators multiplying `2Ω_j^{(2)}`.
///
/// The y entry is `σ_x^{ad} − σ_x^{bc}`; that is the sign that reproduces
/// `iβα_y` in the representation used by [`crate::dirac`].
pub fn pseudotensor_operators() -> [ComplexMatrix; 3] {
    use Level::*;
    [
        -sigma_y_pair(A, D) - sigma_y_pair(B, C),
        sigma_x_pair(A, D) - sigma_x_pair(B, C),
        sigma_y_pair(B, D) - sigma_y_pair(A, C),
    ]
}

/// Dirac parameters to ion parameters (`ħ = c = 1`):
/// `δ = m/2`, `ηΔΩ̃ = 1/2`, `Ω^{(1)} = κℰ/2`, `Ω^{(2)} = μℰ/2`.
pub fn dirac_to_ion(params: &DiracParams) -> Result<IonParams> {
    params.validate()?;
    let field = params.field_vector();
    Ok(IonParams {
        delta: params.m / 2.0,
        eta_delta_omega: 0.5,
        omega1: field.map(|e| params.kappa * e / 2.0),
        omega2: field.map(|e| params.mu * e / 2.0),
    })
}

fn norm3(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Inverse of [`dirac_to_ion`] on the restricted geometry (both carrier
/// vectors parallel and in the xy-plane).
///
/// Only the products `κℰ_j` and `μℰ_j` are physical. With `kappa = None` the
/// tensor coupling is taken as 1 and ℰ carries the magnitude; passing
/// `Some(κ)` pins it instead. The kinetic coefficient is folded into the
/// momentum, `p_Dirac = 2ηΔΩ̃·p`.
pub fn ion_to_dirac(ion: &IonParams, p: f64, kappa: Option<f64>) -> Result<DiracParams> {
    ion.validate()?;
    let scale = norm3(ion.omega1).max(norm3(ion.omega2)).max(1.0);
    if ion.omega1[2].abs() > GEOMETRY_TOL * scale || ion.omega2[2].abs() > GEOMETRY_TOL * scale {
        return Err(Error::UnsupportedConfiguration(
            "carrier vectors must lie in the xy-plane".into(),
        ));
    }
    if norm3(cross3(ion.omega1, ion.omega2)) > GEOMETRY_TOL * scale * scale {
        return Err(Error::UnsupportedConfiguration(
            "tensor and pseudotensor carrier vectors must be parallel".into(),
        ));
    }

    let kappa_field = ion.omega1.map(|w| 2.0 * w);
    let mu_field = ion.omega2.map(|w| 2.0 * w);
    let kappa_field_norm = norm3(kappa_field);
    let mu_field_norm = norm3(mu_field);

    // Pick the field direction and (κ, ℰ) split.
    let (kappa, e_field, direction) = match kappa {
        Some(k) if k != 0.0 => {
            if kappa_field_norm == 0.0 && mu_field_norm > 0.0 {
                return Err(Error::UnsupportedConfiguration(
                    "kappa != 0 requires a non-zero tensor carrier when the pseudotensor carrier is on".into(),
                ));
            }
            let e = kappa_field_norm / k.abs();
            let dir = kappa_field.map(|x| x / k);
            (k, e, dir)
        }
        Some(_) => {
            if kappa_field_norm > 0.0 {
                return Err(Error::UnsupportedConfiguration(
                    "kappa = 0 is incompatible with a non-zero tensor carrier".into(),
                ));
            }
            (0.0, mu_field_norm, mu_field)
        }
        None if kappa_field_norm > 0.0 => (1.0, kappa_field_norm, kappa_field),
        None => (0.0, mu_field_norm, mu_field),
    };

    let (theta, mu) = if e_field > 0.0 {
        let theta = direction[1].atan2(direction[0]);
        let unit = [theta.cos(), theta.sin(), 0.0];
        let projected: f64 = mu_field.iter().zip(unit).map(|(a, b)| a * b).sum();
        (theta, projected / e_field)
    } else {
        (std::f64::consts::FRAC_PI_4, 0.0)
    };

    DiracParams::new(
        2.0 * ion.delta,
        2.0 * ion.eta_delta_omega * p,
        kappa,
        mu,
        e_field,
        theta,
    )
}

/// Sum of the sideband and carrier interactions on the four internal levels:
///
/// `2δ(σ_z^{ad}+σ_z^{bc}) + 2ηΔΩ̃ p (σ_x^{ad}+σ_x^{bc}) + Σ_j 2Ω_j^{(1)} T_j + Σ_j 2Ω_j^{(2)} P_j`
///
/// with `T_j`, `P_j` from [`tensor_operators`] and [`pseudotensor_operators`].
pub fn assemble_ion_hamiltonian(ion: &IonParams, p: f64) -> Result<ComplexMatrix> {
    ion.validate()?;
    if !p.is_finite() {
        return Err(Error::InvalidParams(format!("momentum must be finite, got {p}")));
    }
    use Level::*;
    let mut h = (sigma_z_pair(A, D) + sigma_z_pair(B, C)) * (2.0 * ion.delta);
    h += kinetic_operator(0) * (2.0 * ion.eta_delta_omega * p);
    for (op, w) in tensor_operators().into_iter().zip(ion.omega1) {
        h += op * (2.0 * w);
    }
    for (op, w) in pseudotensor_operators().into_iter().zip(ion.omega2) {
        h += op * (2.0 * w);
    }
    Ok(h)
}

/// Complex amplitude helper for the level basis.
pub fn level_vector(level: Level) -> [Complex64; 4] {
    let mut v = [Complex64::new(0.0, 0.0); 4];
    v[level as usize] = ONE;
    v
}
