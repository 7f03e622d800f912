use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use relaxwave_cli::check::run_checks;
use relaxwave_cli::output::{simulate, write_riemann, write_wave};
use relaxwave_cli::{parse_config, CliError, RunConfig};

#[derive(Parser)]
#[command(
    name = "relaxwave",
    version,
    about = "Rarefaction waves of the relaxed 1D gas system"
)]
struct Cli {
    /// Reserved; every workflow is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the solver and write diagnostics, profiles and a manifest.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate the smooth wave at time t on the configured grid extent.
    Wave {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 2000)]
        n: usize,
        /// Recipe; the built-in weak rarefaction when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// CSV file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the centered rarefaction fan by self-similar speed.
    Riemann {
        #[arg(long, default_value_t = 401)]
        n: usize,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the invariant suite and print a pass/fail table.
    Check {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn load(path: Option<&PathBuf>) -> Result<RunConfig, CliError> {
    path.map_or_else(|| Ok(RunConfig::demo()), |p| parse_config(p))
}

/// Writes to `path`, or to stdout when none is given.
fn emit(
    path: Option<&PathBuf>,
    body: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    let io = |p: &str, source| CliError::Io {
        path: p.to_string(),
        source,
    };
    match path {
        Some(p) => {
            let name = p.display().to_string();
            let mut out =
                std::io::BufWriter::new(std::fs::File::create(p).map_err(|e| io(&name, e))?);
            body(&mut out)?;
            out.flush().map_err(|e| io(&name, e))
        }
        None => {
            let mut out = std::io::BufWriter::new(std::io::stdout().lock());
            body(&mut out)?;
            out.flush().map_err(|e| io("stdout", e))
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { config, out } => {
            let config = parse_config(&config)?;
            let manifest = simulate(&config, &out)?;
            eprintln!(
                "wrote {} and {} profiles to {}",
                manifest.diagnostics.display(),
                manifest.profiles.len(),
                out.display()
            );
            Ok(())
        }
        Command::Wave { t, n, config, out } => {
            let config = load(config.as_ref())?;
            let wave = config.wave()?;
            emit(out.as_ref(), |w| {
                write_wave(w, &wave, t, config.grid.x_min, config.grid.x_max, n)
            })
        }
        Command::Riemann { n, config, out } => {
            let wave = load(config.as_ref())?.wave()?;
            emit(out.as_ref(), |w| write_riemann(w, &wave, n))
        }
        Command::Check { config } => {
            let outcomes = run_checks(&load(config.as_ref())?)?;
            let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
            for o in &outcomes {
                let mark = if o.passed { "PASS" } else { "FAIL" };
                println!("{mark}  {:width$}  {}", o.name, o.detail);
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            println!("{passed}/{} properties hold", outcomes.len());
            match outcomes.iter().find(|o| !o.passed) {
                Some(o) => Err(CliError::Check(format!("{}: {}", o.name, o.detail))),
                None => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
