//! `tfbound`: feasibility checks and datasets for time–frequency limits on
//! step-response performance.

mod commands;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use tfbound::corpus::DEFAULT_SEED;
use tfbound::feasibility::DEFAULT_STRICT_SLACK;
use tfbound::gaussian::DesignTarget;
use tfbound::pswf::DEFAULT_QUAD_ORDER;
use tfbound::Signal;

use commands::{CRange, Windows};
use output::{Format, Output};

/// Exit status for an infeasible spec sheet.
const EXIT_INFEASIBLE: u8 = 1;
/// Exit status for malformed input or a failed computation.
const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "tfbound", version, about = "Time-frequency limits on transient performance")]
struct Cli {
    /// Input document (spec sheet for `check`, system for `analyze`).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format; records default to json, tables to csv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for generated corpora.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Slack subtracted from margins of strict inequalities.
    #[arg(long, global = true, default_value_t = DEFAULT_STRICT_SLACK)]
    tol: f64,
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sinc-kernel eigenvalues and the asymptotic λ₀ over a range of c.
    Spectrum(SpectrumArgs),
    /// Feasibility verdict for a spec sheet (exit 0 feasible, 1 infeasible).
    Check {
        /// Spec-sheet JSON with fields T, delta, E, E1, W, beta, beta1, beta1_prime.
        spec: Option<PathBuf>,
    },
    /// Gaussian design from one target.
    Design(DesignArgs),
    /// Step metrics of a system, concentration of a sampled signal, or a
    /// corpus of random systems.
    Analyze(AnalyzeArgs),
    /// The signal attaining admissibility equality, or its samples.
    Extremal(ExtremalArgs),
    /// Plot data for figure 2, 3, 4 or 5.
    Figdata {
        #[arg(value_parser = clap::value_parser!(u32).range(2..=5))]
        id: u32,
    },
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    /// Explicit comma-separated c values.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["c_start", "c_end", "c_step"])]
    c: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.1)]
    c_start: f64,
    #[arg(long, default_value_t = 8.0)]
    c_end: f64,
    #[arg(long, default_value_t = 0.1)]
    c_step: f64,
    /// Highest eigenvalue index to report.
    #[arg(long, default_value_t = 0)]
    n_max: usize,
    #[arg(long, default_value_t = DEFAULT_QUAD_ORDER)]
    quad_order: usize,
}

#[derive(Debug, Args)]
struct DesignArgs {
    /// Gaussian parameter a directly.
    #[arg(long)]
    a: Option<f64>,
    /// 10–90 % rise time target (s).
    #[arg(long)]
    rise_time: Option<f64>,
    /// 3 % settling time target (s).
    #[arg(long)]
    settling_time: Option<f64>,
    /// Frequency spread σ_ω target (rad/s).
    #[arg(long)]
    freq_std: Option<f64>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Two-column (t, h) sample file instead of a system.
    #[arg(long, value_name = "PATH", conflicts_with = "corpus")]
    signal: Option<PathBuf>,
    /// Time slot for the concentration measure of `--signal`.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], requires = "signal", allow_negative_numbers = true)]
    slot: Option<Vec<f64>>,
    /// Band edge W (rad/s) for the concentration measure of `--signal`.
    #[arg(long, requires = "signal")]
    band: Option<f64>,
    /// Analyze this many seeded random systems.
    #[arg(long, value_name = "COUNT")]
    corpus: Option<usize>,
}

#[derive(Debug, Args)]
struct ExtremalArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    c: f64,
    /// Emit samples on [−H, H] (slot units) instead of the summary.
    #[arg(long, value_name = "H")]
    samples: Option<f64>,
    /// Samples per slot half-width.
    #[arg(long, default_value_t = 200)]
    per_unit: usize,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn input_path(positional: Option<PathBuf>, config: Option<PathBuf>, what: &str) -> Result<PathBuf> {
    match positional.or(config) {
        Some(p) => Ok(p),
        None => bail!("no {what} given; pass a path or --config"),
    }
}

fn design_target(args: &DesignArgs) -> Result<Option<DesignTarget<f64>>> {
    let targets: Vec<DesignTarget<f64>> = [
        args.rise_time.map(DesignTarget::RiseTime),
        args.settling_time.map(DesignTarget::SettlingTime),
        args.freq_std.map(DesignTarget::FreqStd),
    ]
    .into_iter()
    .flatten()
    .collect();
    match targets.as_slice() {
        [] => Ok(None),
        [t] => Ok(Some(*t)),
        _ => bail!("give only one design target"),
    }
}

/// Runs the command; the flag is false only for an infeasible spec sheet.
fn run(cli: Cli) -> Result<(Output, bool)> {
    match cli.command {
        Command::Spectrum(a) => {
            let cs = match a.c {
                Some(list) => CRange::List(list),
                None => CRange::Range { start: a.c_start, end: a.c_end, step: a.c_step },
            };
            Ok((commands::spectrum(cs, a.n_max, a.quad_order)?, true))
        }
        Command::Check { spec } => {
            let path = input_path(spec, cli.config, "spec sheet")?;
            let spec = commands::parse_spec(&read(&path)?)?;
            commands::check(&spec, cli.tol)
        }
        Command::Design(a) => Ok((commands::design(design_target(&a)?, a.a)?, true)),
        Command::Analyze(a) => {
            let out = if let Some(count) = a.corpus {
                commands::analyze_corpus(cli.seed, count)?
            } else if let Some(path) = a.signal {
                let h = Signal::from_two_column(&read(&path)?)?;
                let slot = a.slot.map(|v| (v[0], v[1]));
                commands::analyze_signal(&h, Windows { slot, band: a.band })?
            } else {
                let path = input_path(None, cli.config, "system")?;
                commands::analyze_system(&commands::parse_system(&read(&path)?)?)?
            };
            Ok((out, true))
        }
        Command::Extremal(a) => Ok((commands::extremal(a.alpha, a.c, a.samples.map(|h| (h, a.per_unit)))?, true)),
        Command::Figdata { id } => Ok((commands::figdata(id)?, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();

    let out_path = cli.out.clone();
    let format = cli.format;
    let (output, ok) = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_INPUT_ERROR);
        }
    };
    let text = output.render(format.unwrap_or(output.default_format()));
    let written = match out_path {
        Some(p) => std::fs::write(&p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_INPUT_ERROR);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INFEASIBLE)
    }
}
