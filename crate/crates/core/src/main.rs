use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use frobval::cli::{fixtures, run_script, selftest, Format, Options, ScriptOutput, EXIT_PARSE};
use frobval::valuations::DEFAULT_PRECISION_CAP;

/// Frobenius classification of valuations on function fields over F_p.
#[derive(Parser, Debug)]
#[command(name = "frobval", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Series coefficients examined before a valuation is declared undetermined.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_CAP)]
    precision_cap: usize,

    /// Seed for the sampling checks in `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a script; `-` reads standard input.
    Run { script: PathBuf },
    /// Cross-check the library against its brute-force oracles.
    Selftest,
    /// Print the reference example scripts.
    Fixtures {
        /// Print only this fixture.
        name: Option<String>,
    },
}

/// Writes to stdout, treating a closed pipe (e.g. `| head`) as success.
fn write_stdout(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
        }
    }
}

fn emit(out: ScriptOutput) -> ExitCode {
    write_stdout(&out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.exit_code as u8)
}

fn read_script(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let options = Options {
        format: cli.format,
        precision_cap: cli.precision_cap,
        seed: cli.seed,
    };
    match cli.command {
        Command::Run { script } => match read_script(&script) {
            Ok(text) => emit(run_script(&text, options)),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", script.display());
                ExitCode::from(EXIT_PARSE as u8)
            }
        },
        Command::Selftest => emit(selftest(options)),
        Command::Fixtures { name: Some(name) } => match fixtures::find(&name) {
            Some(script) => {
                write_stdout(script);
                ExitCode::SUCCESS
            }
            None => {
                let known: Vec<&str> = fixtures::ALL.iter().map(|(n, _)| *n).collect();
                eprintln!(
                    "error: unknown fixture `{name}` (known: {})",
                    known.join(", ")
                );
                ExitCode::from(EXIT_PARSE as u8)
            }
        },
        Command::Fixtures { name: None } => {
            let all: Vec<String> = fixtures::ALL
                .iter()
                .map(|(name, script)| format!("# fixture: {name}\n{script}"))
                .collect();
            write_stdout(&all.join("\n"));
            ExitCode::SUCCESS
        }
    }
}
