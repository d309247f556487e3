use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};

use incdep::bench::{BenchConfig, Method, Scenario};
use incdep::cli::{cmd_bench, cmd_check, cmd_parse, CommandOutput, Emit, RunConfig};
use incdep::grammar::load_grammar;

#[derive(Parser)]
#[command(name = "incdep", version, about = "Word-at-a-time dependency parser")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse one sentence per line.
    Parse {
        /// esh, esd, eshu, esdu, lsu, lsup or backtrack
        #[arg(long)]
        algorithm: Method,
        #[arg(long)]
        grammar: PathBuf,
        /// Backtracking search over projective decisions only.
        #[arg(long)]
        projective: bool,
        /// Emit every complete analysis (backtrack only).
        #[arg(long)]
        all_parses: bool,
        #[arg(long)]
        stats: bool,
        #[arg(long, default_value = "table")]
        emit: Emit,
        /// Input file; standard input when absent.
        input: Option<PathBuf>,
    },
    /// Count grammar queries and link operations over sentence lengths.
    Bench {
        /// Comma-separated list of algorithms.
        #[arg(long, value_delimiter = ',', required = true)]
        algorithm: Vec<Method>,
        /// null-grammar, worst-case-chain or random-tree
        #[arg(long)]
        scenario: Scenario,
        /// Comma-separated sentence lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        projective: bool,
    },
    /// Validate a grammar file.
    Check { grammar: PathBuf },
}

fn read_text(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {}", path.display(), e))
}

fn run(cli: Cli) -> Result<CommandOutput, String> {
    match cli.command {
        Command::Parse {
            algorithm,
            grammar,
            projective,
            all_parses,
            stats,
            emit,
            input,
        } => {
            let grammar = load_grammar(&read_text(&grammar)?)
                .map_err(|e| format!("{}: {}", grammar.display(), e))?;
            let text = match input {
                Some(path) => read_text(&path)?,
                None => {
                    let mut buf = String::new();
                    io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| format!("cannot read standard input: {}", e))?;
                    buf
                }
            };
            let config = RunConfig {
                method: algorithm,
                projective,
                emit,
                stats,
                all_parses,
            };
            cmd_parse(&config, &grammar, &text).map_err(|e| e.to_string())
        }
        Command::Bench {
            algorithm,
            scenario,
            n,
            seed,
            projective,
        } => cmd_bench(&BenchConfig {
            methods: algorithm,
            scenario,
            n_values: n,
            seed,
            projective,
        })
        .map_err(|e| e.to_string()),
        Command::Check { grammar } => Ok(cmd_check(&read_text(&grammar)?)),
    }
}

fn main() {
    match run(Cli::parse()) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            process::exit(out.status);
        }
        Err(message) => {
            eprintln!("incdep: {}", message);
            process::exit(2);
        }
    }
}
