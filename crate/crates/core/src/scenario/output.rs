//! Run outputs: `trajectory.csv`, `report.json`, and optional SVG plots.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::correlations::CorrelationSample;
use crate::error::{Error, Result};
use crate::scenario::config::ScenarioConfig;
use crate::scenario::features::FeatureReport;
use crate::scenario::plot::{line_chart, Series};
use crate::scenario::trajectory::TrajectoryRecord;

pub const CSV_HEADER: &str = "t,negativity,discord_1,discord_2,purity,min_eigenvalue,trace_deviation";
pub const TRAJECTORY_FILE: &str = "trajectory.csv";
pub const REPORT_FILE: &str = "report.json";
pub const INDEX_FILE: &str = "index.csv";

/// Formats `x` with 12 significant digits in the style of C's `%.12g`:
/// trailing zeros dropped, exponent notation outside `1e-5 ≤ |x| < 1e12`.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exponent) = sci.split_once('e').expect("exponent form");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if !(-5..12).contains(&exponent) {
        let mantissa = trim_fraction(mantissa);
        return format!("{mantissa}e{exponent}");
    }
    let decimals = (11 - exponent).max(0) as usize;
    trim_fraction(&format!("{x:.decimals$}")).to_string()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn trajectory_csv(record: &TrajectoryRecord) -> String {
    let mut out = String::with_capacity(96 * (record.samples.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in &record.samples {
        let fields = [
            s.t,
            s.negativity,
            s.discord_1,
            s.discord_2,
            s.purity,
            s.min_eigenvalue,
            s.trace_deviation,
        ];
        let row: Vec<String> = fields.iter().map(|&x| format_sig12(x)).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

/// Contents of `report.json`: the feature report plus the config echo.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    #[serde(flatten)]
    pub features: FeatureReport,
    pub config: ScenarioConfig,
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

type Column = fn(&CorrelationSample) -> f64;

fn series_plot(record: &TrajectoryRecord, title: &str, y_label: &str, series: &[(&str, &str, Column)]) -> String {
    let series: Vec<Series<'_>> = series
        .iter()
        .map(|&(label, color, value)| Series {
            label,
            color,
            points: record.samples.iter().map(|s| (s.t, value(s))).collect(),
        })
        .collect();
    line_chart(title, "p t", y_label, &series)
}

/// Writes the run files into `config.outputs` and returns their paths.
pub fn emit_outputs(
    record: &TrajectoryRecord,
    report: &FeatureReport,
    config: &ScenarioConfig,
) -> Result<Vec<PathBuf>> {
    let dir = &config.outputs;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let mut written = Vec::new();
    let csv_path = dir.join(TRAJECTORY_FILE);
    write_file(&csv_path, &trajectory_csv(record))?;
    written.push(csv_path);

    let run = RunReport {
        features: report.clone(),
        config: config.clone(),
    };
    let report_path = dir.join(REPORT_FILE);
    write_file(&report_path, &run.to_json()?)?;
    written.push(report_path);

    if config.emit_plots {
        let state = config.initial_state.to_string();
        let title = format!("negativity, state {state}, m/p = {}", config.m_over_p);
        let svg = series_plot(record, &title, "negativity", &[("N", "#1f77b4", |s| s.negativity)]);
        let path = dir.join("negativity.svg");
        write_file(&path, &svg)?;
        written.push(path);

        let title = format!("geometric discord, state {state}, m/p = {}", config.m_over_p);
        let svg = series_plot(
            record,
            &title,
            "geometric discord",
            &[
                ("D (qubit 1)", "#d62728", |s| s.discord_1),
                ("D (qubit 2)", "#2ca02c", |s| s.discord_2),
            ],
        );
        let path = dir.join("discord.svg");
        write_file(&path, &svg)?;
        written.push(path);
    }
    Ok(written)
}

/// Writes `index.csv` for a sweep: one row per grid point.
pub fn write_sweep_index(dir: &Path, runs: &[(TrajectoryRecord, FeatureReport)]) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut out = String::from(
        "point,m_over_p,E_over_p,gamma_over_p,initial_state,directory,death_intervals,revival_count,min_negativity,max_negativity,final_purity\n",
    );
    for (k, (record, report)) in runs.iter().enumerate() {
        let c = &record.config;
        let directory = c
            .outputs
            .strip_prefix(dir)
            .unwrap_or(&c.outputs)
            .display()
            .to_string();
        let _ = writeln!(
            out,
            "{k},{},{},{},{},{directory},{},{},{},{},{}",
            format_sig12(c.m_over_p),
            format_sig12(c.e_over_p),
            format_sig12(c.gamma_over_p),
            c.initial_state,
            report.death_intervals.len(),
            report.revival_count,
            format_sig12(report.min_negativity),
            format_sig12(report.max_negativity),
            format_sig12(report.final_purity),
        );
    }
    let path = dir.join(INDEX_FILE);
    write_file(&path, &out)?;
    Ok(path)
}
