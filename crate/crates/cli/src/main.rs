use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use slicestem_cli::{execute, Command, Failure, Format, Options};

/// Run one slicestem job: read a JSON payload, print a JSON or CSV report.
#[derive(Debug, Parser)]
#[command(name = "slicestem", version, about)]
struct Cli {
    /// Command to run. Optional when the input is a `{"command", "payload"}` job.
    #[arg(long, value_enum)]
    command: Option<Command>,
    /// Payload file; standard input when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Seed for Monte-Carlo estimates.
    #[arg(long)]
    seed: Option<u64>,
    /// Quadrature node or sample count, overriding the command default.
    #[arg(long)]
    nodes: Option<usize>,
    /// Membership tolerance, overriding the command default.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    let res = match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map(|s| text = s),
        _ => std::io::stdin().read_to_string(&mut text).map(|_| ()),
    };
    res.map(|_| text).map_err(|e| Failure { kind: "io".into(), detail: e.to_string(), exit_code: 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { seed: cli.seed, nodes: cli.nodes, tol: cli.tol };
    let (out, code) = match read_input(cli.input.as_ref()) {
        Ok(text) => execute(&text, cli.command, &opts, cli.format),
        Err(f) => (serde_json::to_string_pretty(&f.to_json()).expect("serializable") + "\n", f.exit_code),
    };
    print!("{out}");
    ExitCode::from(code as u8)
}
