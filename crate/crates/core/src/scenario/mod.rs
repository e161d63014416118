//! Scenario catalog, trajectory runner, feature detection, and file outputs.

pub mod config;
pub mod features;
pub mod output;
pub mod plot;
pub mod trajectory;

use std::fmt::Write as _;

use rayon::prelude::*;

pub use config::{initial_state, ConfigFile, InitialState, ScenarioConfig};
pub use features::{detect_features, detect_features_in, FeatureReport};
pub use output::{emit_outputs, format_sig12, trajectory_csv, write_sweep_index, RunReport};
pub use trajectory::{run_trajectory, TrajectoryRecord};

use crate::dirac::{compute_g2, eigenvalue_closed_form};
use crate::error::Result;
use crate::ion::dirac_to_ion;

/// Runs one trajectory and its feature report.
pub fn run_scenario(config: &ScenarioConfig) -> Result<(TrajectoryRecord, FeatureReport)> {
    let record = run_trajectory(config)?;
    let report = detect_features(&record, config.eps_dead, config.eps_alive);
    Ok((record, report))
}

/// Runs every grid point concurrently. Results come back in grid order and
/// are identical to a serial run.
pub fn run_sweep(points: &[ScenarioConfig]) -> Result<Vec<(TrajectoryRecord, FeatureReport)>> {
    points.par_iter().map(run_scenario).collect()
}

/// Human-readable ion-trap parameters (and energies) for each grid point.
pub fn plan_report(file: &ConfigFile) -> Result<String> {
    let mut out = String::new();
    for (k, point) in file.points().iter().enumerate() {
        let params = point.dirac_params()?;
        let ion = dirac_to_ion(&params)?;
        let _ = writeln!(
            out,
            "[point {k}] m/p = {}, E/p = {}, kappa = {}, mu = {}, theta = {}, gamma/p = {}",
            format_sig12(point.m_over_p),
            format_sig12(point.e_over_p),
            format_sig12(point.kappa),
            format_sig12(point.mu),
            format_sig12(point.theta),
            format_sig12(point.gamma_over_p),
        );
        let vec3 = |v: [f64; 3]| {
            format!(
                "({}, {}, {})",
                format_sig12(v[0]),
                format_sig12(v[1]),
                format_sig12(v[2])
            )
        };
        let _ = writeln!(out, "  delta           = {}", format_sig12(ion.delta));
        let _ = writeln!(out, "  eta_delta_omega = {}", format_sig12(ion.eta_delta_omega));
        let _ = writeln!(out, "  omega1          = {}", vec3(ion.omega1));
        let _ = writeln!(out, "  omega2          = {}", vec3(ion.omega2));
        let _ = writeln!(out, "  g2              = {}", format_sig12(compute_g2(&params)?));
        if params.is_closed_form_configuration() {
            let mut energies = Vec::new();
            for (n, s) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                energies.push(format_sig12(eigenvalue_closed_form(&params, n, s)?));
            }
            let _ = writeln!(out, "  lambda_(n,s)    = {}", energies.join(", "));
        }
    }
    Ok(out)
}
