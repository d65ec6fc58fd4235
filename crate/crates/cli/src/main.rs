//! `beltrami`: configuration-driven runs of the spectral wave pipeline.

mod commands;
mod config;
mod error;
mod output;

use beltrami::dispersion::JacobianKind;
use clap::{Parser, Subcommand, ValueEnum};
use config::Setup;
use error::{CliError, CliResult, ExitKind};
use output::{Sink, ARTIFACT_VERSION};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "beltrami",
    version,
    about = "Doubly periodic Beltrami water waves: dispersion, bifurcation and residual checks"
)]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Directory receiving the artifacts.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Seed for randomised sample generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report failures as JSON on stderr.
    #[arg(long, global = true)]
    json_errors: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Non-resonance and transversality checks.
    Validate,
    /// Dispersion relation queries.
    Dispersion {
        #[command(subcommand)]
        action: DispersionCmd,
    },
    /// Newton solve for the reference velocity.
    SolveC0 {
        #[arg(long, value_enum, default_value = "analytic")]
        jacobian: Jacobian,
        /// Starting point `x,y`.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        guess: Option<[f64; 2]>,
    },
    /// Bifurcation coefficients and second-order surface table.
    Expand,
    /// Second-order surface for amplitudes `A`, `B`.
    Synthesize {
        /// Amplitude of the first kernel mode, `re,im`.
        #[arg(long = "A", value_parser = parse_pair, allow_hyphen_values = true)]
        a: [f64; 2],
        /// Amplitude of the second kernel mode, `re,im`.
        #[arg(long = "B", value_parser = parse_pair, allow_hyphen_values = true)]
        b: [f64; 2],
    },
    /// Residual decay of the synthesised wave along an amplitude ray.
    Residual {
        /// Strictly decreasing positive scale factors.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        amplitudes: Vec<f64>,
        #[arg(long = "A", value_parser = parse_pair, allow_hyphen_values = true, default_value = "1,0")]
        a: [f64; 2],
        #[arg(long = "B", value_parser = parse_pair, allow_hyphen_values = true, default_value = "1,0")]
        b: [f64; 2],
        /// Taylor order of the velocity expansion; defaults to the config value.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Pseudo-differential symbols.
    Symbols {
        #[command(subcommand)]
        action: SymbolsCmd,
    },
}

#[derive(Subcommand)]
enum DispersionCmd {
    /// `ρ` and `∇_c ρ` at one wave vector.
    Eval {
        /// Lattice mode `m1,m2`.
        #[arg(long, value_parser = parse_mode, allow_hyphen_values = true)]
        mode: Option<[i32; 2]>,
        /// Wave vector `x,y`.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        k: Option<[f64; 2]>,
        /// Velocity `x,y`; defaults to the reference velocity.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        c: Option<[f64; 2]>,
        #[arg(long)]
        beta: Option<f64>,
    },
    /// `ρ` over the truncation box.
    Scan,
}

#[derive(Subcommand)]
enum SymbolsCmd {
    /// Batch evaluation from a CSV file or from seeded random samples.
    Eval {
        #[arg(long, value_name = "CSV")]
        input: Option<PathBuf>,
        #[arg(long, value_name = "COUNT")]
        random: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Jacobian {
    Analytic,
    Fd,
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let a: f64 = a.parse().map_err(|e| format!("{a}: {e}"))?;
            let b: f64 = b.parse().map_err(|e| format!("{b}: {e}"))?;
            if a.is_finite() && b.is_finite() {
                Ok([a, b])
            } else {
                Err("values must be finite".into())
            }
        }
        _ => Err(format!("expected two comma-separated numbers, got '{s}'")),
    }
}

fn parse_mode(s: &str) -> Result<[i32; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok([
            a.parse().map_err(|e| format!("{a}: {e}"))?,
            b.parse().map_err(|e| format!("{b}: {e}"))?,
        ]),
        _ => Err(format!("expected two comma-separated integers, got '{s}'")),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate => "validate",
        Command::Dispersion {
            action: DispersionCmd::Eval { .. },
        } => "dispersion eval",
        Command::Dispersion {
            action: DispersionCmd::Scan,
        } => "dispersion scan",
        Command::SolveC0 { .. } => "solve-c0",
        Command::Expand => "expand",
        Command::Synthesize { .. } => "synthesize",
        Command::Residual { .. } => "residual",
        Command::Symbols { .. } => "symbols eval",
    }
}

fn run(cli: &Cli, hash: &mut Option<String>) -> CliResult<Vec<PathBuf>> {
    let path = cli
        .config
        .as_deref()
        .ok_or_else(|| CliError::config("config: --config PATH is required"))?;
    let setup = Setup::load(path)?;
    *hash = Some(setup.hash.clone());
    let name = command_name(&cli.command);
    let mut sink = Sink::new(&cli.out, &setup.hash, name, setup.note())?;
    match &cli.command {
        Command::Validate => commands::validate(&setup, &mut sink)?,
        Command::Dispersion { action } => match action {
            DispersionCmd::Eval { mode, k, c, beta } => {
                commands::dispersion_eval(&setup, &mut sink, *mode, *k, *c, *beta)?
            }
            DispersionCmd::Scan => commands::dispersion_scan(&setup, &mut sink)?,
        },
        Command::SolveC0 { jacobian, guess } => {
            let j = match jacobian {
                Jacobian::Analytic => JacobianKind::Analytic,
                Jacobian::Fd => JacobianKind::FiniteDifference,
            };
            commands::solve_c0(&setup, &mut sink, *guess, j)?
        }
        Command::Expand => commands::expand(&setup, &mut sink)?,
        Command::Synthesize { a, b } => commands::synthesize(&setup, &mut sink, *a, *b)?,
        Command::Residual {
            amplitudes,
            a,
            b,
            order,
        } => commands::residual(&setup, &mut sink, amplitudes, *a, *b, *order)?,
        Command::Symbols {
            action: SymbolsCmd::Eval { input, random },
        } => commands::symbols_eval(&setup, &mut sink, input.as_deref(), *random, cli.seed)?,
    }
    Ok(sink.written().to_vec())
}

fn report(err: &CliError, json: bool, hash: Option<&str>) {
    if json {
        let v = serde_json::json!({
            "error": {
                "kind": err.kind,
                "exit_code": err.kind.code(),
                "message": err.message,
            },
            "artifact_version": ARTIFACT_VERSION,
            "config_hash": hash,
        });
        eprintln!("{v}");
    } else {
        eprintln!("error: {}", err.message);
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let wants_json = std::env::args().any(|a| a == "--json-errors");
            if wants_json && !matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let msg = e.render().to_string();
                report(&CliError::new(ExitKind::Usage, msg.trim()), true, None);
                return ExitCode::from(ExitKind::Usage.code());
            }
            e.exit();
        }
    };
    let mut hash = None;
    match run(&cli, &mut hash) {
        Ok(written) => {
            let v = serde_json::json!({
                "command": command_name(&cli.command),
                "config_hash": hash,
                "written": written.iter().map(|p| display(p)).collect::<Vec<_>>(),
            });
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            report(&e, cli.json_errors, hash.as_deref());
            ExitCode::from(e.kind.code())
        }
    }
}
