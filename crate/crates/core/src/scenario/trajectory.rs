use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::correlations::CorrelationSample;
use crate::error::{Error, Result};
use crate::noise::Propagator;
use crate::scenario::config::ScenarioConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    pub config: ScenarioConfig,
    pub samples: Vec<CorrelationSample>,
    pub wall_time: Duration,
}

impl TrajectoryRecord {
    pub fn negativities(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.negativity)
    }
}

/// Evolves the configured initial state over the sample grid and measures
/// every sample. Samples are computed in parallel; each is a pure function
/// of the config, so the result does not depend on the worker count.
///
/// The first sample is measured on the initial state itself. Any sample that
/// breaks a density-matrix or measure invariant aborts the run; the error
/// names the earliest such sample.
pub fn run_trajectory(config: &ScenarioConfig) -> Result<TrajectoryRecord> {
    config.validate()?;
    let started = Instant::now();
    let params = config.dirac_params()?;
    let noise = config.noise_params()?;
    let rho0 = config.initial_state.density_matrix()?;
    let propagator = Propagator::new(&params)?;

    let results: Vec<Result<CorrelationSample>> = config
        .sample_times()
        .into_par_iter()
        .enumerate()
        .map(|(k, t)| {
            let rho = if k == 0 {
                rho0
            } else {
                propagator.evolve_noisy(&rho0, &noise, t)?
            };
            let sample = CorrelationSample::measure(&rho, t)?;
            match sample.violation() {
                Some(invariant) => Err(Error::InvariantViolation { t, invariant }),
                None => Ok(sample),
            }
        })
        .collect();
    let samples = results.into_iter().collect::<Result<Vec<_>>>()?;

    Ok(TrajectoryRecord {
        config: config.clone(),
        samples,
        wall_time: started.elapsed(),
    })
}
