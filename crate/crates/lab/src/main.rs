use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use sumprod_lab::report::{write_csv, write_json};
use sumprod_lab::{run, Experiment, ExperimentConfig, Format, LabError, LabResult};

/// Run one experiment from a JSON config and emit its report.
///
/// Exit status: 0 success, 2 hypothesis-guard refusal, 3 budget exceeded,
/// 4 malformed config, 1 anything else.
#[derive(Debug, Parser)]
#[command(name = "lab", version)]
struct Cli {
    experiment: Experiment,
    #[arg(long)]
    config: PathBuf,
    /// Defaults to the config's `output`, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to the config's `format`, then csv.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads; defaults to one per core.
    #[arg(long)]
    threads: Option<usize>,
    /// Overrides the config's tuple-enumeration budget.
    #[arg(long)]
    budget: Option<u64>,
}

fn execute(cli: Cli) -> LabResult<()> {
    let mut cfg = ExperimentConfig::load(&cli.config)?;
    if cfg.experiment != cli.experiment {
        return Err(LabError::Config(format!(
            "config describes {:?}, command line asked for {:?}",
            cfg.experiment, cli.experiment
        )));
    }
    if let Some(b) = cli.budget {
        cfg.budgets.tuples = b;
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| LabError::Config(e.to_string()))?;
    let rows = pool.install(|| run(&cfg))?;

    let format = cli.format.or(cfg.format).unwrap_or_default();
    let out: Box<dyn Write> = match cli.out.or(cfg.output.clone()) {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Csv => write_csv(&rows, out),
        Format::Json => write_json(&rows, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
