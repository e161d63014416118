//! End-to-end acceptance checks.
//!
//! [`run_all`] evaluates every criterion and reports one outcome per
//! criterion; a failing criterion does not stop the others. The integration
//! test target and `bispinor selftest` both print these outcomes.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use num_complex::Complex64;

use crate::correlations::{geometric_discord, negativity, CorrelationSample};
use crate::dirac::{build_dirac_hamiltonian, eigenprojectors, eigenvalue_closed_form, DiracParams};
use crate::error::Result;
use crate::ion::{assemble_ion_hamiltonian, dirac_to_ion};
use crate::linalg::{hermitian_eigenvalues, identity4, ComplexMatrix, Subsystem};
use crate::noise::{build_kraus_set, projector_sum, NoiseParams, Propagator};
use crate::scenario::{
    detect_features, emit_outputs, run_trajectory, FeatureReport, InitialState, RunReport,
    ScenarioConfig, TrajectoryRecord,
};
use crate::state::DensityMatrix;

pub const SPECTRUM_TOL: f64 = 1e-10;
pub const PROJECTOR_TOL: f64 = 1e-10;
pub const ION_TOL: f64 = 1e-12;
pub const KRAUS_COMPLETENESS_TOL: f64 = 1e-12;
pub const NOISELESS_TOL: f64 = 1e-10;
pub const MEASURE_TOL: f64 = 1e-10;
pub const SELFTEST_BUDGET_SECS: f64 = 60.0;

const DEATH_SPAN: f64 = 0.1;
const RESIDUAL_DISCORD: f64 = 1e-4;
const NO_DEATH_FLOOR: f64 = 1e-3;
const OSCILLATION: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] criterion {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

fn outcome(id: u8, name: &'static str, result: Result<(bool, String)>) -> CriterionOutcome {
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionOutcome { id, name, passed, detail }
}

/// The parameter grid shared by the spectrum, projector, and ion-map checks.
pub fn parameter_grid() -> Vec<DiracParams> {
    let mut grid = Vec::new();
    for m in [0.0, 0.5, 1.0, 10.0] {
        for e in [0.5, 1.0, 2.0] {
            for kappa in [0.5, 1.0] {
                for mu in [0.5, 1.0] {
                    grid.push(DiracParams::new(m, 1.0, kappa, mu, e, PI / 4.0).expect("grid point"));
                }
            }
        }
    }
    grid
}

/// Reference trajectory configuration: κ = μ = ℰ/p = 1, Γ/p = ½, t ≤ 20/p.
pub fn reference_config(state: InitialState, m_over_p: f64) -> ScenarioConfig {
    ScenarioConfig {
        m_over_p,
        initial_state: state,
        ..ScenarioConfig::default()
    }
}

/// The trajectories behind the feature, CPTP, and hierarchy criteria.
struct Runs {
    level_a: (TrajectoryRecord, FeatureReport),
    entangled: Vec<(TrajectoryRecord, FeatureReport)>,
}

impl Runs {
    fn compute() -> Result<Self> {
        let run = |config: ScenarioConfig| -> Result<(TrajectoryRecord, FeatureReport)> {
            let record = run_trajectory(&config)?;
            let report = detect_features(&record, config.eps_dead, config.eps_alive);
            Ok((record, report))
        };
        let level_a = run(reference_config(InitialState::A, 1.0))?;
        let mut entangled = Vec::new();
        for state in [InitialState::Cat, InitialState::Werner] {
            for m in [0.0, 1.0] {
                entangled.push(run(reference_config(state.clone(), m))?);
            }
        }
        Ok(Self { level_a, entangled })
    }

    fn all(&self) -> impl Iterator<Item = &(TrajectoryRecord, FeatureReport)> {
        std::iter::once(&self.level_a).chain(&self.entangled)
    }
}

fn label(record: &TrajectoryRecord) -> String {
    format!("{} m/p={}", record.config.initial_state, record.config.m_over_p)
}

fn spectrum_oracle() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for params in parameter_grid() {
        let mut closed = Vec::with_capacity(4);
        for (n, s) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            closed.push(eigenvalue_closed_form(&params, n, s)?);
        }
        closed.sort_by(f64::total_cmp);
        let numeric = hermitian_eigenvalues(&build_dirac_hamiltonian(&params)?)?;
        let scale = numeric.iter().fold(0.0f64, |acc, x| acc.max(x.abs())).max(f64::MIN_POSITIVE);
        for (a, b) in closed.iter().zip(&numeric) {
            worst = worst.max((a - b).abs() / scale);
        }
    }
    let anchors = [
        (0.0, vec![-(5f64.sqrt()), -1.0, 1.0, 5f64.sqrt()]),
        (
            1.0,
            vec![
                -(4.0 + 2.0 * 2f64.sqrt()).sqrt(),
                -(4.0 - 2.0 * 2f64.sqrt()).sqrt(),
                (4.0 - 2.0 * 2f64.sqrt()).sqrt(),
                (4.0 + 2.0 * 2f64.sqrt()).sqrt(),
            ],
        ),
    ];
    let mut anchor_err = 0.0f64;
    for (m, expected) in anchors {
        let params = DiracParams::new(m, 1.0, 1.0, 1.0, 1.0, PI / 4.0)?;
        let numeric = hermitian_eigenvalues(&build_dirac_hamiltonian(&params)?)?;
        for (a, b) in expected.iter().zip(&numeric) {
            anchor_err = anchor_err.max((a - b).abs());
        }
    }
    Ok((
        worst <= SPECTRUM_TOL && anchor_err <= SPECTRUM_TOL,
        format!("max relative error {worst:.2e} over grid, anchor error {anchor_err:.2e}"),
    ))
}

fn projector_suite() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut checked = 0;
    let mut skipped = 0;
    for params in parameter_grid() {
        let spectral = match eigenprojectors(&params) {
            Ok(s) => s,
            Err(crate::Error::DegenerateSpectrum(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        checked += 1;
        let h = build_dirac_hamiltonian(&params)?;
        let mut sum = ComplexMatrix::zeros(4)?;
        for (i, p) in spectral.projectors.iter().enumerate() {
            sum += *p;
            worst = worst.max((*p * *p).max_abs_diff(p));
            worst = worst.max((p.trace() - 1.0).norm());
            worst = worst.max((h * *p).max_abs_diff(&(*p * spectral.lambdas[i])));
            for (j, q) in spectral.projectors.iter().enumerate() {
                if i != j {
                    worst = worst.max((*p * *q).max_abs());
                }
            }
        }
        worst = worst.max(sum.max_abs_diff(&identity4()));
    }
    Ok((
        worst <= PROJECTOR_TOL && checked > 0,
        format!("{checked} points checked, {skipped} degenerate skipped, max deviation {worst:.2e}"),
    ))
}

fn ion_map_equivalence() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for params in parameter_grid() {
        let ion = assemble_ion_hamiltonian(&dirac_to_ion(&params)?, params.p)?;
        worst = worst.max(ion.max_abs_diff(&build_dirac_hamiltonian(&params)?));
    }
    Ok((worst <= ION_TOL, format!("max entry difference {worst:.2e}")))
}

fn channel_cptp(runs: &Runs) -> Result<(bool, String)> {
    let mut completeness = 0.0f64;
    for gamma in [0.0, 0.1, 0.5, 1.0, 3.0] {
        for t in [0.0, 0.01, 0.5, 1.0, 5.0, 20.0, 200.0] {
            let kraus = build_kraus_set(&NoiseParams::new(gamma)?, t)?;
            completeness = completeness.max(kraus.completeness_deviation());
        }
    }
    let mut trace = 0.0f64;
    let mut min_eig = f64::INFINITY;
    let (mut purity_lo, mut purity_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (record, _) in runs.all() {
        for s in &record.samples {
            trace = trace.max(s.trace_deviation);
            min_eig = min_eig.min(s.min_eigenvalue);
            purity_lo = purity_lo.min(s.purity);
            purity_hi = purity_hi.max(s.purity);
        }
    }
    let passed = completeness <= KRAUS_COMPLETENESS_TOL
        && trace <= 1e-10
        && min_eig >= -1e-9
        && purity_lo >= 0.25 - 1e-9
        && purity_hi <= 1.0 + 1e-9;
    Ok((
        passed,
        format!(
            "completeness {completeness:.2e}, trace deviation {trace:.2e}, min eigenvalue {min_eig:.2e}, purity in [{purity_lo:.4}, {purity_hi:.4}]"
        ),
    ))
}

fn noiseless_limit() -> Result<(bool, String)> {
    let params = DiracParams::new(1.0, 1.0, 1.0, 1.0, 1.0, PI / 4.0)?;
    let propagator = Propagator::new(&params)?;
    let spectral = eigenprojectors(&params)?;
    let noise = NoiseParams::noiseless();
    let mut worst = 0.0f64;
    for state in [InitialState::A, InitialState::Cat, InitialState::Werner] {
        let rho0 = state.density_matrix()?;
        for t in [0.5, 1.0, 5.0, 20.0] {
            let noisy = propagator.evolve_noisy(&rho0, &noise, t)?;
            let reference = projector_sum(&rho0, &spectral, t);
            worst = worst.max(noisy.matrix().max_abs_diff(reference.matrix()));
        }
    }
    Ok((worst <= NOISELESS_TOL, format!("max entry difference {worst:.2e}")))
}

fn bell_phi_plus() -> Result<DensityMatrix> {
    let amp = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    DensityMatrix::pure(&[amp, zero, zero, amp])
}

fn measure_anchors() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut check = |value: f64, expected: f64| worst = worst.max((value - expected).abs());

    let bell = bell_phi_plus()?;
    check(negativity(&bell)?, 1.0);
    check(geometric_discord(&bell, Subsystem::First)?, 0.5);
    check(geometric_discord(&bell, Subsystem::Second)?, 0.5);

    let products = [
        InitialState::A.density_matrix()?,
        InitialState::D.density_matrix()?,
        DensityMatrix::pure(&[
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.5),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.5),
        ])?,
        DensityMatrix::maximally_mixed(),
    ];
    for rho in &products {
        check(negativity(rho)?, 0.0);
        check(geometric_discord(rho, Subsystem::First)?, 0.0);
        check(geometric_discord(rho, Subsystem::Second)?, 0.0);
    }

    let isotropic = DensityMatrix::new(
        *bell.matrix() * 0.5 + *DensityMatrix::maximally_mixed().matrix() * 0.5,
    )?;
    check(negativity(&isotropic)?, 0.25);

    Ok((worst <= MEASURE_TOL, format!("max deviation {worst:.2e}")))
}

fn level_a_features(runs: &Runs) -> Result<(bool, String)> {
    let (record, report) = &runs.level_a;
    let eps_alive = record.config.eps_alive;
    let long_deaths: Vec<&(f64, f64)> = report
        .death_intervals
        .iter()
        .filter(|(a, b)| b - a >= DEATH_SPAN - 1e-9)
        .collect();
    let revived = long_deaths.iter().any(|&&(_, end)| {
        record
            .samples
            .iter()
            .any(|s| s.t > end && s.negativity > eps_alive)
    });
    let residual_ok = report
        .residual_discord_in_death
        .is_none_or(|d| d > RESIDUAL_DISCORD);
    let residual = report
        .residual_discord_in_death
        .map_or("none".to_string(), |d| format!("{d:.2e}"));
    Ok((
        !long_deaths.is_empty() && revived && residual_ok,
        format!(
            "{} death interval(s) of span >= {DEATH_SPAN}, revival after one: {revived}, min discord in death: {residual}, N range [{:.2e}, {:.4}]",
            long_deaths.len(),
            report.min_negativity,
            report.max_negativity
        ),
    ))
}

fn entangled_features(runs: &Runs) -> Result<(bool, String)> {
    let mut passed = true;
    let mut parts = Vec::new();
    for (record, report) in &runs.entangled {
        let initial = record.samples[0].negativity;
        let last = record.samples[record.samples.len() - 1].negativity;
        let ok = report.min_negativity > NO_DEATH_FLOOR
            && report.max_negativity - report.min_negativity > OSCILLATION
            && last < initial;
        passed &= ok;
        parts.push(format!(
            "{}: min N {:.2e}, max N {:.3}, final N {:.2e}{}",
            label(record),
            report.min_negativity,
            report.max_negativity,
            last,
            if ok { "" } else { " (fails)" }
        ));
    }
    Ok((passed, parts.join("; ")))
}

fn hierarchy(runs: &Runs) -> Result<(bool, String)> {
    let mut violations = 0;
    let mut total = 0;
    let mut tightest = f64::INFINITY;
    for (record, _) in runs.all() {
        for s in &record.samples {
            total += 1;
            if !s.satisfies_hierarchy() {
                violations += 1;
            }
            tightest = tightest.min(s.discord_1 - (s.negativity / 2.0).powi(2));
        }
    }
    Ok((
        violations == 0,
        format!("{violations} violations in {total} samples, min slack D1 - (N/2)^2 = {tightest:.2e}"),
    ))
}

fn schmidt_cross_check() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for chi in [0.1, 0.3, PI / 8.0, 0.6, 1.2] {
        let (s, c) = f64::sin_cos(chi);
        let zero = Complex64::new(0.0, 0.0);
        let rho = DensityMatrix::pure(&[Complex64::new(c, 0.0), zero, zero, Complex64::new(s, 0.0)])?;
        let sample = CorrelationSample::measure(&rho, 0.0)?;
        let sin2 = (2.0 * chi).sin();
        worst = worst.max((sample.negativity - sin2.abs()).abs());
        worst = worst.max((sample.discord_1 - sin2 * sin2 / 2.0).abs());
        worst = worst.max((sample.discord_2 - sin2 * sin2 / 2.0).abs());
    }
    Ok((worst <= MEASURE_TOL, format!("max deviation {worst:.2e} over 5 angles")))
}

fn scratch_dir(tag: &str) -> PathBuf {
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0);
    std::env::temp_dir().join(format!("bispinor-{tag}-{}-{nanos}", std::process::id()))
}

fn determinism(started: Instant) -> Result<(bool, String)> {
    let mut csvs = Vec::new();
    let mut round_trip = true;
    for k in 0..2 {
        let dir = scratch_dir(&format!("determinism{k}"));
        let config = ScenarioConfig {
            outputs: dir.clone(),
            ..reference_config(InitialState::Cat, 1.0)
        };
        let record = run_trajectory(&config)?;
        let report = detect_features(&record, config.eps_dead, config.eps_alive);
        emit_outputs(&record, &report, &config)?;
        let csv = fs::read(dir.join(crate::scenario::output::TRAJECTORY_FILE))
            .map_err(|e| crate::Error::io(&dir, e))?;
        let json = fs::read_to_string(dir.join(crate::scenario::output::REPORT_FILE))
            .map_err(|e| crate::Error::io(&dir, e))?;
        let parsed = RunReport::from_json(&json)?;
        round_trip &= parsed.features == report && parsed.config == config;
        round_trip &= parsed.to_json()? == json;
        csvs.push(csv);
        let _ = fs::remove_dir_all(&dir);
    }
    let identical = csvs[0] == csvs[1];
    let elapsed = started.elapsed().as_secs_f64();
    Ok((
        identical && round_trip && elapsed < SELFTEST_BUDGET_SECS,
        format!(
            "byte-identical csv: {identical}, report round-trip: {round_trip}, full run {elapsed:.2} s (budget {SELFTEST_BUDGET_SECS} s)"
        ),
    ))
}

/// Evaluates all criteria in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    let started = Instant::now();
    let runs = Runs::compute();
    let with_runs = |f: fn(&Runs) -> Result<(bool, String)>| match &runs {
        Ok(r) => f(r),
        Err(e) => Ok((false, format!("reference trajectories failed: {e}"))),
    };
    let mut outcomes = vec![
        outcome(1, "spectrum oracle", spectrum_oracle()),
        outcome(2, "projector suite", projector_suite()),
        outcome(3, "ion-map equivalence", ion_map_equivalence()),
        outcome(4, "channel CPTP", with_runs(channel_cptp)),
        outcome(5, "noiseless limit", noiseless_limit()),
        outcome(6, "measure anchors", measure_anchors()),
        outcome(7, "level-a sudden death and revival", with_runs(level_a_features)),
        outcome(8, "cat/werner no sudden death", with_runs(entangled_features)),
        outcome(9, "negativity-discord hierarchy", with_runs(hierarchy)),
        outcome(10, "Schmidt-state cross-check", schmidt_cross_check()),
    ];
    outcomes.push(outcome(11, "determinism and serialization", determinism(started)));
    outcomes
}
