use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cobcalc_cli::run::{run, Command, Options};
use cobcalc_cli::CliError;

/// Batch front end for the cobordism calculus.
///
/// Reports go to standard output as `key=value` lines. Exit status is 0 on
/// success, 1 on engine errors (or failed axiom checks) and 2 on parse errors.
#[derive(Parser, Debug)]
#[command(name = "cobcalc", version)]
struct Cli {
    command: Command,
    /// Words as S-expressions, labels, integers or rationals, depending on the command.
    args: Vec<String>,
    /// Presentation or diagram file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Search depth for `dist`.
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Family of free objects for `dist` (repeatable).
    #[arg(long)]
    family: Vec<String>,
    /// Where `render` writes its SVG (standard output otherwise).
    #[arg(long)]
    svg_out: Option<PathBuf>,
    /// Surgery action rule `min f_L > max f_L′` instead of the pointwise one.
    #[arg(long)]
    strict_minmax: bool,
    /// Seed for randomized extra samples in `check-axioms`.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input = match &cli.input {
        None => None,
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(source) => {
                let e = CliError::Io { path: path.display().to_string(), source };
                eprintln!("{e}");
                return ExitCode::from(e.exit_code());
            }
        },
    };
    let opts = Options { depth: cli.depth, family: cli.family, strict_minmax: cli.strict_minmax, seed: cli.seed };
    let outcome = run(cli.command, input.as_deref(), &cli.args, &opts);
    print!("{}", outcome.report);
    if let Some(svg) = outcome.svg {
        match &cli.svg_out {
            Some(path) => {
                if let Err(source) = std::fs::write(path, svg) {
                    let e = CliError::Io { path: path.display().to_string(), source };
                    eprintln!("{e}");
                    return ExitCode::from(1);
                }
            }
            None => print!("{svg}"),
        }
    }
    if let Some(err) = outcome.report.lines.iter().find_map(|l| l.strip_prefix("error=")) {
        eprintln!("cobcalc: {err}");
    }
    ExitCode::from(outcome.report.status)
}
