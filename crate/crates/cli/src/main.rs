use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cechtower_cli::{execute_text, Command, Options, EXIT_INVALID};
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CommandArg {
    Cohomology,
    Connecting,
    Les,
    Tower,
    Spectral,
    GerbeLift,
    Validate,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Command {
        match c {
            CommandArg::Cohomology => Command::Cohomology,
            CommandArg::Connecting => Command::Connecting,
            CommandArg::Les => Command::Les,
            CommandArg::Tower => Command::Tower,
            CommandArg::Spectral => Command::Spectral,
            CommandArg::GerbeLift => Command::GerbeLift,
            CommandArg::Validate => Command::Validate,
        }
    }
}

/// Exact Čech cohomology, connecting maps, class towers, spectral terms and
/// lifting obstructions from JSON documents.
#[derive(Debug, Parser)]
#[command(name = "cechtower", version)]
struct Cli {
    #[arg(value_enum)]
    command: CommandArg,
    /// JSON document to read; standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Highest cohomological degree to report.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Cap on search states or cochain generators.
    #[arg(long)]
    budget: Option<u128>,
    /// Re-check the instance against its invariants and include the verdict.
    #[arg(long)]
    verify: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| format!("stdin: {e}"))
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let options = Options {
        max_degree: cli.max_degree,
        budget: cli.budget,
        verify: cli.verify,
    };
    let response = execute_text(cli.command.into(), &text, options);
    if let Some(out) = response.render() {
        let mut stdout = io::stdout().lock();
        if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
            return ExitCode::from(EXIT_INVALID as u8);
        }
    }
    if let Some(d) = &response.diagnostic {
        eprintln!("error: {d}");
    }
    ExitCode::from(response.exit_code as u8)
}
