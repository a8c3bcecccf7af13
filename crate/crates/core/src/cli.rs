//! `shakekit` command line: replay, generate, evaluate and sweep.
//!
//! Exit codes: 0 success, 2 bad usage or bad input, 3 I/O failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::detector::{process_trace, DetectorConfig, Sensibility, DEFAULT_DELAY};
use crate::error::Error;
use crate::eval::{self, match_events, DEFAULT_TOLERANCE};
use crate::synth::{self, generate_trace, SynthSpec, CORPUS_NAMES, CORPUS_RATE, CORPUS_SEED};
use crate::trace_io::{
    parse_trace, read_events, read_labels, write_events, write_labels, write_trace,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "shakekit",
    version,
    about = "Shake gesture detection over accelerometer traces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the detector over a trace CSV and write event JSONL.
    Replay(ReplayArgs),
    /// Write a synthetic trace CSV and its label JSONL.
    Generate(GenerateArgs),
    /// Score event JSONL against label JSONL.
    Evaluate(EvaluateArgs),
    /// Evaluate a threshold x delay grid and write the results as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("level").required(true).args(["threshold", "sensibility"])))]
pub struct ReplayArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Threshold in g.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// lightest, light, normal, hard or hardest.
    #[arg(long)]
    pub sensibility: Option<String>,
    /// Debounce delay in seconds.
    #[arg(long, default_value_t = DEFAULT_DELAY)]
    pub delay: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Total duration in seconds.
    #[arg(long, required_unless_present = "corpus", conflicts_with = "corpus")]
    pub duration: Option<f64>,
    /// Sample rate in Hz.
    #[arg(long, default_value_t = CORPUS_RATE, conflicts_with = "corpus")]
    pub rate: f64,
    /// Per-axis noise standard deviation in g.
    #[arg(long, default_value_t = 0.0, conflicts_with = "corpus")]
    pub noise: f64,
    /// Burst list in label JSONL form.
    #[arg(long, conflicts_with = "corpus")]
    pub bursts: Option<PathBuf>,
    /// Use a built-in corpus spec: clean, noisy, pure-noise or near-threshold.
    #[arg(long)]
    pub corpus: Option<String>,
    #[arg(long, default_value_t = CORPUS_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub labels: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub events: PathBuf,
    #[arg(long)]
    pub labels: PathBuf,
    /// Seconds after a burst ends that a detection still counts.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub labels: PathBuf,
    /// Comma-separated thresholds in g.
    #[arg(long)]
    pub thresholds: String,
    /// Comma-separated delays in seconds.
    #[arg(long)]
    pub delays: String,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

fn parse_list(raw: &str, flag: &str) -> Result<Vec<f64>, Failure> {
    if raw.trim().is_empty() {
        return Err(Failure::Input(format!("--{flag} needs at least one value")));
    }
    raw.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Input(format!("--{flag}: {v:?} is not a number")))
        })
        .collect()
}

fn replay(args: &ReplayArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let threshold = match (&args.sensibility, args.threshold) {
        (Some(name), _) => name.parse::<Sensibility>()?.threshold(),
        (None, Some(t)) => t,
        (None, None) => unreachable!("clap enforces the group"),
    };
    let config = DetectorConfig::new(threshold, args.delay)?;
    let text = read(&args.input)?;
    let doc = parse_trace(&text, args.input.display().to_string()).map_err(in_file(&args.input))?;
    let events = process_trace(&doc.samples, &config)?;
    write(&args.out, &write_events(&events))?;
    writeln!(
        stdout,
        "samples={} events={}",
        doc.samples.len(),
        events.len()
    )
    .map_err(|e| Failure::Io(e.to_string()))
}

fn generate(args: &GenerateArgs) -> Result<(), Failure> {
    let spec = match &args.corpus {
        Some(name) => synth::corpus_spec(name, args.seed).ok_or_else(|| {
            Failure::Input(format!(
                "unknown corpus {name:?}, expected one of {}",
                CORPUS_NAMES.join(", ")
            ))
        })?,
        None => {
            let bursts = match &args.bursts {
                Some(path) => read_labels(&read(path)?).map_err(in_file(path))?,
                None => Vec::new(),
            };
            SynthSpec {
                total_duration: args.duration.expect("clap requires --duration"),
                sample_rate: args.rate,
                noise_sigma: args.noise,
                bursts,
                seed: args.seed,
            }
        }
    };
    let (trace, labels) = generate_trace(&spec)?;
    write(&args.out, &write_trace(&trace))?;
    write(&args.labels, &write_labels(&labels))
}

fn evaluate(args: &EvaluateArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let events = read_events(&read(&args.events)?).map_err(in_file(&args.events))?;
    let labels = read_labels(&read(&args.labels)?).map_err(in_file(&args.labels))?;
    let report = match_events(&events, &labels, args.tolerance)?;
    let json = serde_json::to_string(&report).expect("report serializes");
    writeln!(stdout, "{json}").map_err(|e| Failure::Io(e.to_string()))
}

fn sweep(args: &SweepArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let thresholds = parse_list(&args.thresholds, "thresholds")?;
    let delays = parse_list(&args.delays, "delays")?;
    let trace = parse_trace(&read(&args.input)?, args.input.display().to_string())
        .map_err(in_file(&args.input))?;
    let labels = read_labels(&read(&args.labels)?).map_err(in_file(&args.labels))?;
    let cells = eval::sweep(&trace, &labels, &thresholds, &delays, args.tolerance)?;
    write(&args.out, &eval::write_sweep_csv(&cells))?;
    writeln!(stdout, "cells={}", cells.len()).map_err(|e| Failure::Io(e.to_string()))
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Replay(a) => replay(a, stdout),
        Command::Generate(a) => generate(a),
        Command::Evaluate(a) => evaluate(a, stdout),
        Command::Sweep(a) => sweep(a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}
