use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use probe_engine_cli::config::{BranchChoice, OutputFormat, SweepConfig};
use probe_engine_cli::dataset::Dataset;
use probe_engine_cli::figures::{run_figure, FigureId};
use probe_engine_cli::report::{onsager_dump, run_check};
use probe_engine_cli::sweep::run_sweep;

/// Three-terminal probe heat-engine harness: figure datasets, parameter
/// sweeps, matrix dumps and invariant checks.
#[derive(Parser)]
#[command(name = "probe-engine", version, about)]
struct Cli {
    /// TOML configuration file; flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (default: <dataset>.<ext> in the working directory).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads (default: config, then PROBE_ENGINE_WORKERS, then all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Load branch for gain-parameterized outputs.
    #[arg(long, global = true, value_enum)]
    branch: Option<BranchArg>,
    /// Pass tolerance on bound residuals.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one figure dataset.
    Figure {
        #[arg(value_enum)]
        id: FigureId,
    },
    /// Run the (phi, delta, force) grid sweep.
    Sweep,
    /// Print the full and reduced Onsager matrices at one flux point.
    OnsagerDump {
        /// Flux phase phi in radians.
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_3)]
        phi: f64,
    },
    /// Run the invariant suite at one parameter point.
    Check {
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_3)]
        phi: f64,
        /// Thermal-bias ratio delta = X_L^T / X_P^T.
        #[arg(long, default_value_t = 0.8)]
        delta: f64,
    },
}

/// Exit codes: 0 success, 1 validation error, 2 numerical failure.
const EXIT_VALIDATION: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;

fn load_config(cli: &Cli) -> Result<SweepConfig, String> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            SweepConfig::from_toml(&text).map_err(|e| e.to_string())?
        }
        None => SweepConfig::default(),
    };
    if let Some(format) = cli.format {
        config.output.format = match format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        };
    }
    if let Some(workers) = cli.workers {
        config.output.workers = workers;
    }
    if let Some(branch) = cli.branch {
        config.output.branch = match branch {
            BranchArg::Plus => BranchChoice::Plus,
            BranchArg::Minus => BranchChoice::Minus,
        };
    }
    if let Some(tolerance) = cli.tolerance {
        config.output.tolerance = tolerance;
    }
    if let Some(out) = &cli.out {
        config.output.path = Some(out.clone());
    }
    config.validate().map_err(|e| e.to_string())?;
    Ok(config)
}

fn write_dataset(dataset: &Dataset, config: &SweepConfig) -> Result<(), String> {
    let format = config.output.format;
    let path = config
        .output
        .path
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.{}", dataset.name, format.extension())));
    let bytes = dataset.to_bytes(format);
    std::fs::write(&path, &bytes).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    println!(
        "wrote {} ({} rows, {} columns, {} bytes)",
        path.display(),
        dataset.rows.len(),
        dataset.columns.len(),
        bytes.len()
    );
    Ok(())
}

fn main() -> ExitCode {
    // Usage errors are validation errors (exit 1); clap defaults to 2, which
    // is reserved for numerical failures.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match load_config(&cli) {
        Ok(c) => c,
        Err(message) => {
            eprintln!("{message}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };

    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(config.resolved_workers())
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("cannot build worker pool: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };

    match &cli.command {
        Command::Figure { id } => {
            let dataset = match pool.install(|| run_figure(*id, &config)) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("numerical failure: {e}");
                    return ExitCode::from(EXIT_NUMERICAL);
                }
            };
            if let Err(message) = write_dataset(&dataset, &config) {
                eprintln!("{message}");
                return ExitCode::from(EXIT_VALIDATION);
            }
        }
        Command::Sweep => {
            let dataset = pool.install(|| run_sweep(&config));
            if let Err(message) = write_dataset(&dataset, &config) {
                eprintln!("{message}");
                return ExitCode::from(EXIT_VALIDATION);
            }
        }
        Command::OnsagerDump { phi } => match pool.install(|| onsager_dump(&config, *phi)) {
            Ok(text) => print!("{text}"),
            Err(e) => {
                eprintln!("numerical failure: {e}");
                return ExitCode::from(EXIT_NUMERICAL);
            }
        },
        Command::Check { phi, delta } => match pool.install(|| run_check(&config, *phi, *delta)) {
            Ok(outcome) => {
                print!("{}", outcome.report);
                if !outcome.all_pass {
                    return ExitCode::from(EXIT_NUMERICAL);
                }
            }
            Err(e) => {
                eprintln!("numerical failure: {e}");
                return ExitCode::from(EXIT_NUMERICAL);
            }
        },
    }
    ExitCode::SUCCESS
}
