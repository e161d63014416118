//! Sudden-death and revival detection on negativity traces.

use serde::{Deserialize, Serialize};

use crate::correlations::CorrelationSample;
use crate::scenario::trajectory::TrajectoryRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureReport {
    /// `(t_start, t_end)` of each maximal run of at least two consecutive
    /// samples with negativity below `eps_dead`.
    pub death_intervals: Vec<(f64, f64)>,
    /// Death intervals followed by a sample with negativity above `eps_alive`.
    pub revival_count: usize,
    pub min_negativity: f64,
    pub max_negativity: f64,
    /// Smallest `D₁` over the samples inside death intervals; `None` (JSON
    /// `null`) when there is no death interval.
    pub residual_discord_in_death: Option<f64>,
    pub final_purity: f64,
}

impl FeatureReport {
    pub fn has_sudden_death(&self) -> bool {
        !self.death_intervals.is_empty()
    }
}

pub fn detect_features(record: &TrajectoryRecord, eps_dead: f64, eps_alive: f64) -> FeatureReport {
    detect_features_in(&record.samples, eps_dead, eps_alive)
}

/// Panics on an empty sample list.
pub fn detect_features_in(samples: &[CorrelationSample], eps_dead: f64, eps_alive: f64) -> FeatureReport {
    assert!(!samples.is_empty(), "feature detection needs at least one sample");

    // Runs of dead samples as index ranges [start, end].
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut start: Option<usize> = None;
    for (k, s) in samples.iter().enumerate() {
        let dead = s.negativity < eps_dead;
        match (dead, start) {
            (true, None) => start = Some(k),
            (false, Some(first)) => {
                runs.push((first, k - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(first) = start {
        runs.push((first, samples.len() - 1));
    }
    runs.retain(|(a, b)| b > a);

    let revival_count = runs
        .iter()
        .filter(|&&(_, end)| samples[end + 1..].iter().any(|s| s.negativity > eps_alive))
        .count();

    let residual_discord_in_death = runs
        .iter()
        .flat_map(|&(a, b)| samples[a..=b].iter().map(|s| s.discord_1))
        .reduce(f64::min);

    let (min_negativity, max_negativity) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
            (lo.min(s.negativity), hi.max(s.negativity))
        });

    FeatureReport {
        death_intervals: runs
            .iter()
            .map(|&(a, b)| (samples[a].t, samples[b].t))
            .collect(),
        revival_count,
        min_negativity,
        max_negativity,
        residual_discord_in_death,
        final_purity: samples[samples.len() - 1].purity,
    }
}
