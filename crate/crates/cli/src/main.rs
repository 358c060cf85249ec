use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hlya_cli::{exit_code, run, Command, Format, RunConfig};

/// Exact analysis of Hom-Lie-Yamaguti algebras: identities, cohomology,
/// derivations and formal deformations.
#[derive(Parser)]
#[command(name = "hlya", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        command: cli.command,
        format: cli.format,
        output: cli.output,
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = report.render(config.format);
    match &config.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
