//! Scenario configuration and its flat `key = value` file format.
//!
//! ```text
//! # level-a trajectories for three masses
//! m_over_p     = 0, 1, 10      # a list turns the run into a sweep
//! E_over_p     = 1
//! kappa        = 1
//! mu           = 1
//! theta        = pi/4
//! gamma_over_p = 0.5
//! initial_state = a
//! t_max = 20
//! dt    = 0.01
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirac::DiracParams;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::noise::NoiseParams;
use crate::state::DensityMatrix;

pub const DEFAULT_EPS_DEAD: f64 = 1e-6;
pub const DEFAULT_EPS_ALIVE: f64 = 1e-2;

/// Named initial states, written on the level basis `a, b, c, d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialState {
    A,
    B,
    C,
    D,
    /// `(|a⟩ + |d⟩)/√2`.
    Cat,
    /// `(|b⟩ + |c⟩)/√2`.
    Werner,
    /// Explicit row-major density matrix as `[re, im]` pairs.
    Custom(Vec<[f64; 2]>),
}

pub const STATE_NAMES: &str = "a, b, c, d, cat, werner, custom";

impl InitialState {
    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let basis = |k: usize| {
            let mut v = [zero; 4];
            v[k] = one;
            v
        };
        match self {
            InitialState::A => DensityMatrix::pure(&basis(0)),
            InitialState::B => DensityMatrix::pure(&basis(1)),
            InitialState::C => DensityMatrix::pure(&basis(2)),
            InitialState::D => DensityMatrix::pure(&basis(3)),
            InitialState::Cat => DensityMatrix::pure(&[one, zero, zero, one]),
            InitialState::Werner => DensityMatrix::pure(&[zero, one, one, zero]),
            InitialState::Custom(entries) => {
                let entries: Vec<Complex64> =
                    entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                DensityMatrix::new(ComplexMatrix::from_row_major(4, &entries)?)
            }
        }
    }

    /// Parses 16 comma- or whitespace-separated complex entries such as
    /// `0.5, 0, 0, 0.5i, ...` into a custom state.
    pub fn parse_custom(text: &str) -> Result<Self> {
        let entries = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                Complex64::from_str(s)
                    .map(|z| [z.re, z.im])
                    .map_err(|_| Error::Config(format!("cannot parse complex entry '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.len() != 16 {
            return Err(Error::Config(format!(
                "custom_state needs 16 entries, got {}",
                entries.len()
            )));
        }
        Ok(InitialState::Custom(entries))
    }
}

impl FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(InitialState::A),
            "b" => Ok(InitialState::B),
            "c" => Ok(InitialState::C),
            "d" => Ok(InitialState::D),
            "cat" => Ok(InitialState::Cat),
            "werner" => Ok(InitialState::Werner),
            other => Err(Error::Config(format!(
                "unknown initial state '{other}' (valid: {STATE_NAMES})"
            ))),
        }
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            InitialState::A => "a",
            InitialState::B => "b",
            InitialState::C => "c",
            InitialState::D => "d",
            InitialState::Cat => "cat",
            InitialState::Werner => "werner",
            InitialState::Custom(_) => "custom",
        };
        f.write_str(name)
    }
}

/// Pure projector for a named state.
pub fn initial_state(name: &str) -> Result<DensityMatrix> {
    InitialState::from_str(name)?.density_matrix()
}

/// One trajectory's worth of configuration. Energies are in units of the
/// momentum, which is fixed to `p = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub m_over_p: f64,
    #[serde(rename = "E_over_p")]
    pub e_over_p: f64,
    pub kappa: f64,
    pub mu: f64,
    pub theta: f64,
    pub gamma_over_p: f64,
    pub initial_state: InitialState,
    pub t_max: f64,
    pub dt: f64,
    pub outputs: PathBuf,
    pub emit_plots: bool,
    pub eps_dead: f64,
    pub eps_alive: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            m_over_p: 1.0,
            e_over_p: 1.0,
            kappa: 1.0,
            mu: 1.0,
            theta: PI / 4.0,
            gamma_over_p: 0.5,
            initial_state: InitialState::A,
            t_max: 20.0,
            dt: 0.01,
            outputs: PathBuf::from("out"),
            emit_plots: false,
            eps_dead: DEFAULT_EPS_DEAD,
            eps_alive: DEFAULT_EPS_ALIVE,
        }
    }
}

impl ScenarioConfig {
    pub fn dirac_params(&self) -> Result<DiracParams> {
        DiracParams::new(self.m_over_p, 1.0, self.kappa, self.mu, self.e_over_p, self.theta)
    }

    pub fn noise_params(&self) -> Result<NoiseParams> {
        NoiseParams::new(self.gamma_over_p)
    }

    pub fn validate(&self) -> Result<()> {
        self.dirac_params()?;
        self.noise_params()?;
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::Config(format!("t_max must be positive, got {}", self.t_max)));
        }
        if !(self.dt > 0.0 && self.dt <= self.t_max) {
            return Err(Error::Config(format!(
                "dt must satisfy 0 < dt <= t_max, got dt = {} with t_max = {}",
                self.dt, self.t_max
            )));
        }
        if !(self.eps_dead >= 0.0 && self.eps_alive >= 0.0) {
            return Err(Error::Config("feature thresholds must be non-negative".into()));
        }
        self.initial_state.density_matrix()?;
        Ok(())
    }

    /// Sample times `0, dt, 2dt, …` up to and including `t_max` (to within
    /// 1e-9 sample spacings).
    pub fn sample_times(&self) -> Vec<f64> {
        let steps = (self.t_max / self.dt + 1e-9).floor() as usize;
        (0..=steps).map(|k| k as f64 * self.dt).collect()
    }
}

/// A parsed configuration file: one base config plus optional value lists
/// for the swept keys (`m_over_p`, `E_over_p`, `gamma_over_p`).
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFile {
    pub base: ScenarioConfig,
    pub m_values: Vec<f64>,
    pub e_values: Vec<f64>,
    pub gamma_values: Vec<f64>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut base = ScenarioConfig::default();
        let mut m_values = vec![base.m_over_p];
        let mut e_values = vec![base.e_over_p];
        let mut gamma_values = vec![base.gamma_over_p];
        let mut custom: Option<String> = None;
        let mut state_name: Option<String> = None;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected 'key = value', got '{line}'", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let at = |e: Error| match e {
                Error::Config(msg) => Error::Config(format!("line {}: {key}: {msg}", lineno + 1)),
                other => other,
            };
            match key.to_ascii_lowercase().as_str() {
                "m_over_p" => m_values = parse_list(value).map_err(at)?,
                "e_over_p" => e_values = parse_list(value).map_err(at)?,
                "gamma_over_p" => gamma_values = parse_list(value).map_err(at)?,
                "kappa" => base.kappa = parse_real(value).map_err(at)?,
                "mu" => base.mu = parse_real(value).map_err(at)?,
                "theta" => base.theta = parse_real(value).map_err(at)?,
                "t_max" => base.t_max = parse_real(value).map_err(at)?,
                "dt" => base.dt = parse_real(value).map_err(at)?,
                "eps_dead" => base.eps_dead = parse_real(value).map_err(at)?,
                "eps_alive" => base.eps_alive = parse_real(value).map_err(at)?,
                "initial_state" => state_name = Some(value.to_string()),
                "custom_state" => custom = Some(value.to_string()),
                "outputs" => base.outputs = PathBuf::from(value),
                "emit_plots" => base.emit_plots = parse_bool(value).map_err(at)?,
                _ => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key '{key}'",
                        lineno + 1
                    )))
                }
            }
        }

        base.initial_state = match (state_name.as_deref().map(str::trim), custom) {
            (Some(name), Some(entries)) if name.eq_ignore_ascii_case("custom") => {
                InitialState::parse_custom(&entries)?
            }
            (Some(name), None) if name.eq_ignore_ascii_case("custom") => {
                return Err(Error::Config("initial_state = custom requires custom_state".into()))
            }
            (Some(name), _) => name.parse()?,
            (None, Some(_)) => {
                return Err(Error::Config("custom_state given without initial_state = custom".into()))
            }
            (None, None) => InitialState::A,
        };

        let file = Self {
            base,
            m_values,
            e_values,
            gamma_values,
        };
        for point in file.points() {
            point.validate()?;
        }
        Ok(file)
    }

    pub fn is_sweep(&self) -> bool {
        self.m_values.len() * self.e_values.len() * self.gamma_values.len() > 1
    }

    /// Grid points in `m`-major order. In a sweep, each point writes into
    /// `outputs/point_NNN`.
    pub fn points(&self) -> Vec<ScenarioConfig> {
        let sweep = self.is_sweep();
        let mut out = Vec::new();
        for &m in &self.m_values {
            for &e in &self.e_values {
                for &g in &self.gamma_values {
                    let mut config = self.base.clone();
                    config.m_over_p = m;
                    config.e_over_p = e;
                    config.gamma_over_p = g;
                    if sweep {
                        config.outputs = self.base.outputs.join(format!("point_{:03}", out.len()));
                    }
                    out.push(config);
                }
            }
        }
        out
    }
}

/// Reals, optionally written with `pi`: `0.5`, `pi`, `pi/4`, `3*pi/4`, `-pi/2`.
pub fn parse_real(text: &str) -> Result<f64> {
    let s = text.trim().to_ascii_lowercase();
    if !s.contains("pi") {
        return s
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("cannot parse number '{text}'")));
    }
    let bad = || Error::Config(format!("cannot parse angle '{text}'"));
    let (numerator, denominator) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (s.as_str(), 1.0),
    };
    let factor = match numerator {
        "pi" => 1.0,
        "-pi" => -1.0,
        other => {
            let coefficient = other.strip_suffix("pi").ok_or_else(bad)?.trim();
            let coefficient = coefficient.strip_suffix('*').unwrap_or(coefficient).trim();
            coefficient.parse::<f64>().map_err(|_| bad())?
        }
    };
    Ok(factor * PI / denominator)
}

fn parse_list(text: &str) -> Result<Vec<f64>> {
    let values = text
        .split(',')
        .map(parse_real)
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::Config("empty value list".into()));
    }
    Ok(values)
}

fn parse_bool(text: &str) -> Result<bool> {
    match text.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(Error::Config(format!("expected a boolean, got '{other}'"))),
    }
}
