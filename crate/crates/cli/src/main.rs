use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use uniloc_cli::{run_text, Command, Overrides};

/// Universal localisation of path algebras: run one command on a problem file.
#[derive(Parser, Debug)]
#[command(name = "uniloc", version)]
struct Cli {
    /// hom, ext, bound, check-set, torsion, filt, localize, induced-iso,
    /// reduce-homperp, localized-algebra, verify-well-placed, fac, relproj,
    /// tor1, strip-top, tor-iso, generators, monoid, s-related, late, early, k0
    command: Command,
    /// Problem file (see docs/problem-format.md).
    #[arg(long)]
    input: PathBuf,
    /// Cap on enumerated objects; overrides `set budget`.
    #[arg(long)]
    budget: Option<usize>,
    /// Longest localisation chain to build; overrides `set max-steps`.
    #[arg(long)]
    max_steps: Option<usize>,
    /// Per-vertex enumeration bound, comma separated.
    #[arg(long, value_delimiter = ',')]
    dim_bound: Option<Vec<usize>>,
    /// Operand binding such as `m=P2`; may be repeated.
    #[arg(long = "set", value_parser = parse_binding)]
    operands: Vec<(String, String)>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_binding(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or("expected KEY=NAME")?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("uniloc: cannot read {}: {e}", cli.input.display());
            return ExitCode::from(1);
        }
    };
    let overrides = Overrides {
        budget: cli.budget,
        max_steps: cli.max_steps,
        dim_bound: cli.dim_bound,
        operands: cli.operands,
    };
    let outcome = run_text(&text, cli.command, &overrides);
    let rendered = outcome.render();
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("uniloc: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(outcome.code() as u8)
}
