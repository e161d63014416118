//! `bispinor`: run dephasing trajectories of the ion-trap Dirac system.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bispinor_core::acceptance;
use bispinor_core::scenario::{self, emit_outputs, plan_report, write_sweep_index, ConfigFile};
use bispinor_core::Error;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bispinor", version, about = "Entanglement dynamics of a dephased Dirac bispinor")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a trajectory (or a sweep) and write trajectory.csv and report.json.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `outputs` in the config file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write negativity.svg and discord.svg.
        #[arg(long)]
        plots: bool,
    },
    /// Print the ion-trap parameters and energies a config implies.
    Plan {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the acceptance checks and print one line per criterion.
    Selftest,
}

const EXIT_USAGE: u8 = 1;
const EXIT_INVARIANT: u8 = 2;
const EXIT_IO: u8 = 3;

fn exit_code(error: &Error) -> u8 {
    match error {
        Error::Io { .. } => EXIT_IO,
        Error::InvariantViolation { .. }
        | Error::NoConvergence { .. }
        | Error::NotHermitian { .. }
        | Error::IncompleteKraus { .. }
        | Error::NumericDomain(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

fn load(path: &Path) -> Result<ConfigFile, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ConfigFile::parse(&text)
}

fn simulate(config: &Path, out: Option<PathBuf>, plots: bool) -> Result<(), Error> {
    let mut file = load(config)?;
    if let Some(dir) = out {
        file.base.outputs = dir;
    }
    file.base.emit_plots |= plots;

    let points = file.points();
    let runs = scenario::run_sweep(&points)?;
    for (point, (record, report)) in points.iter().zip(&runs) {
        emit_outputs(record, report, point)?;
        println!(
            "{}: {} samples, {} death interval(s), {} revival(s), N in [{:.3e}, {:.4}], final purity {:.4} ({:.2} s)",
            point.outputs.display(),
            record.samples.len(),
            report.death_intervals.len(),
            report.revival_count,
            report.min_negativity,
            report.max_negativity,
            report.final_purity,
            record.wall_time.as_secs_f64()
        );
    }
    if file.is_sweep() {
        let index = write_sweep_index(&file.base.outputs, &runs)?;
        println!("sweep index: {}", index.display());
    }
    Ok(())
}

fn selftest() -> ExitCode {
    let outcomes = acceptance::run_all();
    for o in &outcomes {
        println!("{o}");
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria pass", outcomes.len());
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INVARIANT)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate { config, out, plots } => simulate(&config, out, plots),
        Command::Plan { config } => load(&config)
            .and_then(|file| plan_report(&file))
            .map(|text| print!("{text}")),
        Command::Selftest => return selftest(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
