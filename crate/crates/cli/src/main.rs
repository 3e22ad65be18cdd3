mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use memopda::Engine;

/// Run two-way pushdown automata and context-free grammars with memoizing
/// simulators.
#[derive(Parser)]
#[command(name = "memopda", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Budget {
    /// Limit on engine calls.
    #[arg(long, default_value_t = 100_000_000)]
    max_steps: u64,
    /// Limit on active frames (default: number of configurations + 1).
    #[arg(long)]
    max_depth: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run an automaton on an input.
    Run {
        /// Automaton file, or `zoo:NAME`.
        file: String,
        /// Input tokens, whitespace-separated unless --chars is given.
        input: String,
        #[arg(long, default_value = "simn")]
        engine: Engine,
        /// Disable loop detection in the deterministic engines.
        #[arg(long)]
        faithful: bool,
        /// Reject accepts that leave symbols on the stack or heads off `>`.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        budget: Budget,
        /// Write one line per engine event to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Treat every character of the input as one token.
        #[arg(long)]
        chars: bool,
    },
    /// Decide whether a grammar derives an input.
    Recognize {
        /// Grammar file, or `zoo:NAME`.
        file: String,
        input: String,
        #[arg(long, default_value = "simn")]
        engine: Engine,
        /// Compile the grammar as written, without removing left recursion.
        #[arg(long)]
        no_elim: bool,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        chars: bool,
    },
    /// Sweep a benchmark family over sizes and engines and write CSV.
    Bench {
        #[arg(long)]
        family: String,
        /// `a..b`, `a..b:step` or a comma-separated list.
        #[arg(long)]
        sizes: String,
        /// Comma-separated engines.
        #[arg(long, value_delimiter = ',', default_value = "intd,simd,intn,simn")]
        engines: Vec<Engine>,
        /// Output file (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for generated inputs.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Check an automaton or grammar file.
    Validate {
        /// `.pda` automaton or `.cfg` grammar, or `zoo:NAME`.
        file: String,
        /// Cross-check the engines against the oracles on every input up to --max-len.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Builtin automata and grammars.
    Zoo {
        #[command(subcommand)]
        command: ZooCommand,
    },
}

#[derive(Subcommand)]
enum ZooCommand {
    /// List the builtin entries.
    List,
    /// Write an entry's source file.
    Export {
        name: String,
        /// Destination file, `-` for standard output (default: NAME.pda or NAME.cfg).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { file, input, engine, faithful, strict, budget, trace, chars } => {
            let opts = commands::options(engine, &budget.into(), faithful, strict);
            commands::run(&file, &input, chars, &opts, trace.as_deref())
        }
        Command::Recognize { file, input, engine, no_elim, budget, chars } => {
            let opts = commands::options(engine, &budget.into(), false, false);
            commands::recognize(&file, &input, chars, &opts, !no_elim)
        }
        Command::Bench { family, sizes, engines, out, seed, jobs, budget } => {
            let opts = commands::options(Engine::SimN, &budget.into(), false, false);
            commands::bench(&family, &sizes, &engines, out.as_deref(), seed, jobs, &opts)
        }
        Command::Validate { file, oracle, max_len } => commands::validate(&file, oracle, max_len),
        Command::Zoo { command: ZooCommand::List } => commands::zoo_list(),
        Command::Zoo { command: ZooCommand::Export { name, out } } => commands::zoo_export(&name, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(commands::EXIT_ERROR)
        }
    }
}

impl From<Budget> for commands::Limits {
    fn from(b: Budget) -> Self {
        commands::Limits { max_steps: b.max_steps, max_depth: b.max_depth }
    }
}
