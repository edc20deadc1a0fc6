use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, ValueEnum};
use stratum_cli::{parse_with, run, Check, FieldSpec, Options, Overrides, Side, EXIT_INPUT_ERROR};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Json,
    Text,
}

/// Decide standard stratification and quasi-heredity for a bound quiver
/// algebra with an ordered partition of its vertices.
#[derive(Parser, Debug)]
#[command(name = "stratum", version)]
struct Args {
    /// Problem document; reads stdin when absent or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Comma-separated subset of noetherian, ss, qh, ideally-ss, ideally-qh,
    /// membership, multiplicities, all. Empty for the Δ table only.
    #[arg(long, default_value = "all")]
    check: String,
    #[arg(long, value_enum)]
    side: Option<Side>,
    /// Restrict module checks to this module; repeatable.
    #[arg(long = "module", value_name = "NAME")]
    modules: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    emit: Emit,
    /// `Q` or `Fp:P`.
    #[arg(long)]
    field: Option<FieldSpec>,
    #[arg(long)]
    max_path_length: Option<usize>,
    /// Run independent checks on separate threads.
    #[arg(long)]
    parallel: bool,
    /// Add per-check wall-clock times to the report.
    #[arg(long)]
    timing: bool,
}

fn read_input(path: Option<&PathBuf>) -> anyhow::Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        }
    }
    Ok(text)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = (|| -> anyhow::Result<stratum_cli::Report> {
        let text = read_input(args.input.as_ref())?;
        let overrides = Overrides { field: args.field, side: args.side, max_path_length: args.max_path_length };
        let spec = parse_with(&text, &overrides)?;
        let options = Options {
            checks: Check::parse_list(&args.check, !spec.modules.is_empty())?,
            modules: args.modules.clone(),
            parallel: args.parallel,
            timing: args.timing,
        };
        Ok(run(&spec, &options)?)
    })();
    match result {
        Ok(report) => {
            match args.emit {
                Emit::Json => println!("{}", report.to_json()),
                Emit::Text => print!("{}", report.to_text()),
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
