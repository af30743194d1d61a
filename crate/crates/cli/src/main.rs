//! `shortcount` command line: count reasoning shortcuts, encode counting
//! problems as DIMACS, generate datasets and score predictions.
//!
//! Every command prints one JSON object on stdout. Failures print
//! `{"error": {...}}` and exit with 1 (usage or input), 2 (capacity) or 3 (I/O).

mod commands;
mod error;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use shortcount::alphamap::StructureMode;
use shortcount::metrics::Metric;

use commands::{CountArgs, Method, Source, TaskArgs, DEFAULT_CAP};
use error::CliError;

#[derive(Parser)]
#[command(name = "shortcount", version, about = "Count and probe reasoning shortcuts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TaskOpts {
    /// Builtin task, e.g. `xor-3`, `and-4`, `mnadd:digits=2,b=10`, `kand`, `boia`.
    #[arg(long, conflicts_with = "cnf")]
    task: Option<String>,
    /// DIMACS knowledge file. Its models are the positive concept vectors
    /// unless `--label-var` names the label variable.
    #[arg(long)]
    cnf: Option<PathBuf>,
    #[arg(long, requires = "cnf")]
    label_var: Option<u32>,
    /// `exhaustive`, `default`, `@FILE`, or inline vectors like `0,0,0;1,1,1`.
    #[arg(long, default_value = "exhaustive")]
    support: String,
    /// Largest number of concept vectors or maps to materialize.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

impl TaskOpts {
    fn into_args(self) -> Option<TaskArgs> {
        let source = match (self.task, self.cnf) {
            (Some(t), _) => Source::Builtin(t),
            (None, Some(path)) => Source::Knowledge {
                path,
                label_var: self.label_var,
            },
            (None, None) => return None,
        };
        Some(TaskArgs {
            source,
            support: self.support,
            cap: self.cap,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count alpha maps that keep every supported example correct.
    Count {
        #[command(flatten)]
        task: TaskOpts,
        /// Count the models of the `--cnf` file itself.
        #[arg(long, requires = "cnf", conflicts_with = "label_var")]
        models: bool,
        /// unrestricted, complete or permutation.
        #[arg(long)]
        mode: Option<StructureMode>,
        #[arg(long, value_enum, default_value = "encode-count")]
        method: Method,
        /// Give up after this many counter decisions.
        #[arg(long)]
        decision_cap: Option<u64>,
    },
    /// Write the counting CNF of a task as DIMACS.
    Encode {
        #[command(flatten)]
        task: TaskOpts,
        #[arg(long, default_value = "permutation")]
        mode: StructureMode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a dataset from a YAML configuration.
    Gen {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; defaults to `output_dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Score predictions given as JSON lines.
    Eval {
        #[arg(long)]
        predictions: PathBuf,
        /// Comma separated, e.g. `collapse,macro-f1,mean-f1`.
        #[arg(long, value_delimiter = ',')]
        metrics: Option<Vec<Metric>>,
        /// Concept positions to keep, comma separated.
        #[arg(long, value_delimiter = ',')]
        positions: Option<Vec<usize>>,
    },
}

fn run(cli: Cli) -> Result<serde_json::Value, CliError> {
    match cli.command {
        Command::Count {
            task,
            models,
            mode,
            method,
            decision_cap,
        } => commands::run_count(&CountArgs {
            task: task.into_args(),
            models,
            mode,
            method,
            decision_cap,
        }),
        Command::Encode { task, mode, out } => {
            let t = task
                .into_args()
                .ok_or_else(|| CliError::usage("encode needs --task or --cnf"))?;
            commands::run_encode(&t, mode, &out)
        }
        Command::Gen { config, out, seed } => commands::run_gen(&config, out.as_deref(), seed),
        Command::Eval {
            predictions,
            metrics,
            positions,
        } => {
            let metrics = metrics.unwrap_or_else(|| Metric::DEFAULT.to_vec());
            commands::run_eval(&predictions, &metrics, positions.as_deref())
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            let err = CliError::usage(e.to_string().trim().to_string());
            println!("{}", err.to_json());
            std::process::exit(err.kind.exit_code());
        }
    };
    match run(cli) {
        Ok(report) => println!("{}", serde_json::to_string_pretty(&report).expect("json")),
        Err(e) => {
            println!("{}", e.to_json());
            std::process::exit(e.kind.exit_code());
        }
    }
}
