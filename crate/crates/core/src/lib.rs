//! Open-system dynamics of a four-level Dirac-like two-qubit system.
//!
//! The Dirac Hamiltonian with tensor and pseudotensor couplings is realized on
//! the internal levels of a trapped ion, which carry a parity ⊗ spin two-qubit
//! structure. Each qubit dephases under local noise; the crate tracks
//! negativity and geometric discord along the resulting trajectories and
//! detects entanglement sudden death and revival.
//!
//! Modules, bottom-up:
//!
//! - [`linalg`]: dense complex 2x2 to 4x4 algebra with a Jacobi eigensolver.
//! - [`dirac`]: Hamiltonian, invariant operator, spectrum, eigenprojectors.
//! - [`ion`]: Dirac ↔ trapped-ion parameter maps and the ionic Hamiltonian.
//! - [`state`]: validated density matrices.
//! - [`noise`]: Kraus dephasing channel and noisy evolution.
//! - [`correlations`]: Fano decomposition, negativity, geometric discord.
//! - [`scenario`]: initial states, trajectories, features, and output files.
//! - [`acceptance`]: end-to-end checks, shared by the test suite and the CLI.

pub mod acceptance;
pub mod correlations;
pub mod dirac;
pub mod error;
pub mod ion;
pub mod linalg;
pub mod noise;
pub mod scenario;
pub mod state;

pub use correlations::{
    fano_decompose, geometric_discord, negativity, purity, CorrelationSample, FanoData,
};
pub use dirac::{
    build_dirac_hamiltonian, build_invariant_operator, compute_g2, eigenprojectors,
    eigenvalue_closed_form, DiracParams, SpectralData,
};
pub use error::{Error, Result};
pub use ion::{assemble_ion_hamiltonian, dirac_to_ion, ion_to_dirac, IonParams};
pub use linalg::{
    evolution_operator, hermitian_eigensystem, partial_transpose, tensor_product,
    trace_norm_hermitian, ComplexMatrix, EigenSystem, Subsystem,
};
pub use noise::{
    apply_channel, build_kraus_set, evolve_noiseless, evolve_noisy, KrausSet, NoiseParams,
    Propagator,
};
pub use scenario::{
    detect_features, emit_outputs, initial_state, run_trajectory, FeatureReport, InitialState,
    ScenarioConfig, TrajectoryRecord,
};
pub use state::DensityMatrix;

pub use num_complex::Complex64;
