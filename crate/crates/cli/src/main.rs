mod commands;

use std::io::{BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CliConfig, CliError, OutputMode, Repl, ReplStep};

/// Calculator for grossone numerals: finite, infinite and infinitesimal
/// values in one exact positional system. `G` denotes grossone.
#[derive(Parser)]
#[command(name = "grossone", version)]
struct Cli {
    /// Lowest grosspower kept in a quotient when a division does not terminate.
    #[arg(long, global = true, default_value_t = grossone::DEFAULT_MIN_POWER, allow_negative_numbers = true)]
    min_power: i64,

    /// Maximum nesting depth of grosspowers in input numerals.
    #[arg(long, global = true, default_value_t = grossone::DEFAULT_DEPTH_LIMIT)]
    depth: usize,

    /// Print grossdigits as decimals, with 6 fractional places or `--decimal=N`.
    #[arg(long, global = true, num_args = 0..=1, require_equals = true, default_missing_value = "6", value_name = "DIGITS")]
    decimal: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression, optionally at a point given as a numeral.
    Eval {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Solve a linear system stored as {"A": [[...]], "b": [...]}.
    Solve { path: PathBuf },
    /// Sum with a possibly infinite number of items, from its closed form S(k).
    Sum {
        formula: Option<String>,
        /// Number of items k.
        #[arg(long, allow_hyphen_values = true)]
        items: String,
        /// The alternating sum 1 - 1 + 1 - ... instead of a closed form.
        #[arg(long)]
        alternating: bool,
    },
    /// Probability of favorable out of total equiprobable outcomes.
    Prob {
        #[arg(long)]
        favorable: String,
        #[arg(long)]
        total: String,
    },
    /// Total measure of mixed-dimension pieces given as JSON.
    Measure {
        file: Option<PathBuf>,
        #[arg(long)]
        json: Option<String>,
    },
    /// Interactive read-eval-print loop.
    Repl,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = CliConfig {
        min_power: cli.min_power,
        depth_limit: cli.depth,
        output: cli
            .decimal
            .map_or(OutputMode::Canonical, OutputMode::Decimal),
    };
    match run(cli.command, config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command, config: CliConfig) -> Result<(), CliError> {
    config.validate()?;
    let out = match command {
        Command::Eval { expr, at } => {
            commands::cmd_eval(&expr, at.as_deref(), &config)?.to_string()
        }
        Command::Solve { path } => commands::cmd_solve(&path)?,
        Command::Sum {
            formula,
            items,
            alternating,
        } => commands::cmd_sum(formula.as_deref(), alternating, &items, &config)?,
        Command::Prob { favorable, total } => commands::cmd_prob(&favorable, &total, &config)?,
        Command::Measure { file, json } => {
            commands::cmd_measure(file.as_deref(), json.as_deref(), &config)?
        }
        Command::Repl => return repl(config),
    };
    println!("{out}");
    Ok(())
}

fn repl(config: CliConfig) -> Result<(), CliError> {
    let interactive = std::io::stdin().is_terminal();
    let mut repl = Repl::new(config);
    let stdin = std::io::stdin();
    let mut stdout = std::io::stdout();
    let mut lines = stdin.lock().lines();
    loop {
        if interactive {
            print!("> ");
            stdout.flush().map_err(|e| CliError::Io(e.to_string()))?;
        }
        let Some(line) = lines.next() else {
            return Ok(());
        };
        let line = line.map_err(|e| CliError::Io(e.to_string()))?;
        match repl.handle_line(&line) {
            ReplStep::Print(s) => println!("{s}"),
            ReplStep::Error(s) => eprintln!("{s}"),
            ReplStep::Silent => {}
            ReplStep::Quit => return Ok(()),
        }
    }
}
