//! `osculate`: exact osculating spaces and flex loci of rational curves
//! and decomposable scrolls from the command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a mathematical check
//! failed.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliError, CliResult};
use report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Tsv,
}

#[derive(Parser, Debug)]
#[command(name = "osculate", version, about = "Exact osculating spaces and flex loci of curves and scrolls")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Random samples per check in `scroll verify`.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "OSCULATE_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Commands on a single curve record.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Commands on a scroll record.
    #[command(subcommand)]
    Scroll(ScrollCmd),
    /// Built-in scenarios with checked expectations.
    #[command(subcommand)]
    Examples(ExamplesCmd),
}

#[derive(Subcommand, Debug)]
enum CurveCmd {
    /// Embedding checks, generic osculating dimensions and flexes.
    Analyze { file: PathBuf },
    /// Inflectional locus of order k.
    Flexes {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Projects the curve from a center subspace.
    Project {
        file: PathBuf,
        #[arg(long)]
        center: PathBuf,
        /// Writes the projected curve record here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Osculating space of order k at a parameter.
    Osc {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// `t=<rat>`, `s=<rat>`, `inf` or a bare rational.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
}

#[derive(Subcommand, Debug)]
enum ScrollCmd {
    /// Osculating dimension of order k at a point.
    Osc {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Base and fiber, e.g. `t=0;0,1` or `inf;1,1`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Second-order flex components.
    Flexes { file: PathBuf },
    /// Runs the statement suite on sampled points.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
    },
    /// Discriminant component invariants, one block per flex component.
    Discr {
        file: PathBuf,
        /// Ramification oracle trials per curve; 0 skips the oracle.
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ExamplesCmd {
    /// Lists scenario ids.
    List,
    /// Runs one scenario; parameters as `--r1 2` or `r1=2`.
    Run {
        id: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Runs every scenario with default parameters.
    All,
}

fn run(cli: &Cli) -> CliResult<(Report, Format)> {
    let seed = cli.seed.unwrap_or(0);
    let budget = cli.budget as usize;
    let mut format = cli.format;
    let report = match &cli.command {
        Command::Curve(c) => match c {
            CurveCmd::Analyze { file } => commands::curve_analyze(file)?,
            CurveCmd::Flexes { file, k } => commands::curve_flexes(file, *k)?,
            CurveCmd::Project { file, center, output } => commands::curve_project(file, center, output.as_deref())?,
            CurveCmd::Osc { file, k, t } => commands::curve_osc(file, *k, t)?,
        },
        Command::Scroll(s) => match s {
            ScrollCmd::Osc { file, k, point } => commands::scroll_osc(file, *k, point)?,
            ScrollCmd::Flexes { file } => commands::scroll_flexes(file)?,
            ScrollCmd::Verify { file, max_order } => commands::scroll_verify(file, budget, seed, *max_order)?,
            ScrollCmd::Discr { file, trials } => commands::scroll_discr(file, *trials, seed)?,
        },
        Command::Examples(e) => match e {
            ExamplesCmd::List => commands::examples_list(),
            ExamplesCmd::All => commands::examples_all(seed)?,
            ExamplesCmd::Run { id, params } => {
                // global flags written after the id land in the trailing list
                let mut seed = seed;
                let mut pairs = Vec::new();
                for (k, v) in commands::parse_scenario_tokens(params)? {
                    match k.as_str() {
                        "seed" => seed = v.parse().map_err(|_| CliError::input(format!("bad seed '{v}'")))?,
                        "format" => {
                            format = Format::from_str(&v, true).map_err(|_| CliError::input(format!("bad format '{v}'")))?
                        }
                        _ => pairs.push((k, v)),
                    }
                }
                commands::examples_run(id, &pairs, seed)?
            }
        },
    };
    Ok((report, format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok((report, format)) => {
            let text = match format {
                Format::Table => report.to_table(),
                Format::Json => report.to_json(),
                Format::Tsv => report.to_tsv(),
            };
            print!("{text}");
            if report.failed() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
