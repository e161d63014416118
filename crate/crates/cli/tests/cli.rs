use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bispinor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bispinor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.cfg");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn simulate_writes_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let config = write_config(dir.path(), "initial_state = cat\nt_max = 1\ndt = 0.1\n");
    let result = bispinor(&["simulate", "--config", &config, "--out", out.to_str().unwrap(), "--plots"]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));

    let csv = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("t,negativity,discord_1,discord_2,purity,min_eigenvalue,trace_deviation")
    );
    assert_eq!(lines.count(), 11);
    let report = fs::read_to_string(out.join("report.json")).unwrap();
    assert!(report.contains("\"death_intervals\""));
    assert!(report.contains("\"E_over_p\""));
    assert!(out.join("negativity.svg").exists());
    assert!(out.join("discord.svg").exists());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "initial_state = werner\nm_over_p = 0\nt_max = 5\n");
    let mut csvs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}"));
        let result = bispinor(&["simulate", "--config", &config, "--out", out.to_str().unwrap()]);
        assert!(result.status.success());
        csvs.push(fs::read(out.join("trajectory.csv")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
}

#[test]
fn sweep_writes_index_and_point_directories() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep");
    let config = write_config(dir.path(), "m_over_p = 0, 1\ngamma_over_p = 0, 0.5\nt_max = 1\ndt = 0.5\n");
    let result = bispinor(&["simulate", "--config", &config, "--out", out.to_str().unwrap()]);
    assert!(result.status.success());
    let index = fs::read_to_string(out.join("index.csv")).unwrap();
    assert_eq!(index.lines().count(), 5);
    for k in 0..4 {
        assert!(out.join(format!("point_{k:03}/trajectory.csv")).exists());
    }
}

#[test]
fn plan_prints_ion_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "m_over_p = 1\n");
    let result = bispinor(&["plan", "--config", &config]);
    assert!(result.status.success());
    let text = String::from_utf8(result.stdout).unwrap();
    assert!(text.contains("delta           = 0.5"));
    assert!(text.contains("lambda_(n,s)"));
}

#[test]
fn bad_config_exits_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "initial_state = bogus\n");
    let result = bispinor(&["simulate", "--config", &config]);
    assert_eq!(result.status.code(), Some(1));
    let stderr = String::from_utf8(result.stderr).unwrap();
    assert!(stderr.contains("werner"), "{stderr}");

    let config = write_config(dir.path(), "dt = -1\n");
    assert_eq!(bispinor(&["plan", "--config", &config]).status.code(), Some(1));
}

#[test]
fn missing_config_exits_with_io_code() {
    let result = bispinor(&["plan", "--config", "/nonexistent/run.cfg"]);
    assert_eq!(result.status.code(), Some(3));
}

#[test]
fn unwritable_output_exits_with_io_code() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let config = write_config(dir.path(), "t_max = 0.1\ndt = 0.1\n");
    let out = blocker.join("out");
    let result = bispinor(&["simulate", "--config", &config, "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(3));
}

#[test]
fn selftest_reports_every_criterion() {
    let result = bispinor(&["selftest"]);
    let text = String::from_utf8(result.stdout).unwrap();
    for id in 1..=11 {
        assert!(text.contains(&format!("criterion {id:>2} ")), "{text}");
    }
    // Two criteria are not reproduced by the model, so selftest exits non-zero.
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn shipped_configs_parse() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    for name in ["level_a.cfg", "cat.cfg"] {
        let path = root.join(name);
        let result = bispinor(&["plan", "--config", path.to_str().unwrap()]);
        assert!(result.status.success(), "{name}");
    }
}
