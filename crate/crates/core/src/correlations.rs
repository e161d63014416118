//! Two-qubit correlation measures: Fano (Bloch) decomposition, negativity,
//! geometric discord, and purity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues, identity2, identity4, kron, partial_transpose, paulis, trace_norm_hermitian,
    ComplexMatrix, Subsystem,
};
use crate::state::{DensityMatrix, StateDiagnostics};

/// Values this close to zero are reported as exactly zero.
pub const CLAMP_TOL: f64 = 1e-12;

const FANO_IMAG_TOL: f64 = 1e-10;

fn clamp_small(x: f64) -> f64 {
    if x < CLAMP_TOL {
        0.0
    } else {
        x
    }
}

/// `ρ = ¼[I + a₁·σ⊗I + a₂·I⊗σ + Σ t_ij σ_i⊗σ_j]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanoData {
    pub a1: [f64; 3],
    pub a2: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl FanoData {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let s = paulis();
        let id = identity2();
        let mut m = identity4();
        for i in 0..3 {
            m += kron(&s[i], &id) * self.a1[i];
            m += kron(&id, &s[i]) * self.a2[i];
            for j in 0..3 {
                m += kron(&s[i], &s[j]) * self.t[i][j];
            }
        }
        m * 0.25
    }

    pub fn bloch(&self, side: Subsystem) -> [f64; 3] {
        match side {
            Subsystem::First => self.a1,
            Subsystem::Second => self.a2,
        }
    }

    /// `Tr[T Tᵀ]`.
    pub fn correlation_norm_sqr(&self) -> f64 {
        self.t.iter().flatten().map(|x| x * x).sum()
    }
}

fn real_expectation(rho: &ComplexMatrix, op: &ComplexMatrix) -> Result<f64> {
    let z = (*rho * *op).trace();
    if z.im.abs() > FANO_IMAG_TOL {
        return Err(Error::InvalidState(format!(
            "expectation value has imaginary part {:.3e}",
            z.im
        )));
    }
    Ok(z.re)
}

pub fn fano_decompose(rho: &DensityMatrix) -> Result<FanoData> {
    let r = rho.matrix();
    let deviation = r.hermitian_deviation();
    if deviation > crate::state::HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let s = paulis();
    let id = identity2();
    let mut fano = FanoData {
        a1: [0.0; 3],
        a2: [0.0; 3],
        t: [[0.0; 3]; 3],
    };
    for i in 0..3 {
        fano.a1[i] = real_expectation(r, &kron(&s[i], &id))?;
        fano.a2[i] = real_expectation(r, &kron(&id, &s[i]))?;
        for j in 0..3 {
            fano.t[i][j] = real_expectation(r, &kron(&s[i], &s[j]))?;
        }
    }
    Ok(fano)
}

/// Negativity with the partial transpose taken on the chosen qubit.
pub fn negativity_on(rho: &DensityMatrix, subsystem: Subsystem) -> Result<f64> {
    let pt = partial_transpose(rho.matrix(), subsystem)?;
    Ok(clamp_small(trace_norm_hermitian(&pt)? - 1.0))
}

/// `N = ‖ρ^{T₁}‖₁ − 1`, normalized to 1 on Bell states.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    negativity_on(rho, Subsystem::First)
}

/// Geometric discord from the Fano data:
/// `D = ¼(‖a‖² + ‖T‖² − k_max)` with `k_max` the top eigenvalue of `a aᵀ + T Tᵀ`.
pub fn geometric_discord_from_fano(fano: &FanoData, side: Subsystem) -> Result<f64> {
    let a = fano.bloch(side);
    // For side 2 the roles of the qubits swap, so T becomes Tᵀ.
    let t = match side {
        Subsystem::First => fano.t,
        Subsystem::Second => {
            let mut tt = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    tt[i][j] = fano.t[j][i];
                }
            }
            tt
        }
    };
    let mut k = [0.0; 9];
    for i in 0..3 {
        for j in 0..3 {
            let ttt: f64 = (0..3).map(|l| t[i][l] * t[j][l]).sum();
            k[3 * i + j] = a[i] * a[j] + ttt;
        }
    }
    let k_matrix = ComplexMatrix::from_real(3, &k)?;
    let k_max = *hermitian_eigenvalues(&k_matrix)?
        .last()
        .expect("three eigenvalues");
    let a_sqr: f64 = a.iter().map(|x| x * x).sum();
    Ok(clamp_small(0.25 * (a_sqr + fano.correlation_norm_sqr() - k_max)))
}

pub fn geometric_discord(rho: &DensityMatrix, side: Subsystem) -> Result<f64> {
    geometric_discord_from_fano(&fano_decompose(rho)?, side)
}

/// `Tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    let r = rho.matrix();
    (*r * *r).trace().re
}

/// Correlation measures and state diagnostics at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSample {
    pub t: f64,
    pub negativity: f64,
    pub discord_1: f64,
    pub discord_2: f64,
    pub purity: f64,
    pub min_eigenvalue: f64,
    pub trace_deviation: f64,
}

/// Bound tolerance for range and hierarchy checks on samples.
pub const SAMPLE_TOL: f64 = 1e-9;

impl CorrelationSample {
    pub fn measure(rho: &DensityMatrix, t: f64) -> Result<Self> {
        let diagnostics = rho.diagnostics()?;
        let fano = fano_decompose(rho)?;
        Ok(Self {
            t,
            negativity: negativity(rho)?,
            discord_1: geometric_discord_from_fano(&fano, Subsystem::First)?,
            discord_2: geometric_discord_from_fano(&fano, Subsystem::Second)?,
            purity: purity(rho),
            min_eigenvalue: diagnostics.min_eigenvalue,
            trace_deviation: diagnostics.trace_deviation,
        })
    }

    /// First violated sample invariant, if any: the density-matrix conditions,
    /// the ranges of both measures, and `(N/2)² ≤ D₁`.
    pub fn violation(&self) -> Option<String> {
        let diagnostics = StateDiagnostics {
            hermitian_deviation: 0.0,
            trace_deviation: self.trace_deviation,
            min_eigenvalue: self.min_eigenvalue,
            purity: self.purity,
        };
        if let Some(what) = diagnostics.violation() {
            return Some(what);
        }
        if !(self.negativity >= 0.0 && self.negativity <= 1.0 + SAMPLE_TOL) {
            return Some(format!("negativity range (N = {})", self.negativity));
        }
        for (name, d) in [("discord_1", self.discord_1), ("discord_2", self.discord_2)] {
            if !(0.0..=0.5 + SAMPLE_TOL).contains(&d) {
                return Some(format!("{name} range (D = {d})"));
            }
        }
        if !self.satisfies_hierarchy() {
            return Some(format!(
                "hierarchy (N/2)^2 <= D_1 (N = {}, D_1 = {})",
                self.negativity, self.discord_1
            ));
        }
        None
    }

    pub fn satisfies_hierarchy(&self) -> bool {
        (self.negativity / 2.0).powi(2) <= self.discord_1 + SAMPLE_TOL
    }
}
