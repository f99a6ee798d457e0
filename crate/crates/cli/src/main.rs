use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use slocc_cli::commands::{self, ClassifyOptions, CliError, EXIT_PARSE};

#[derive(Parser)]
#[command(name = "slocc", version, about = "SLOCC entanglement classification of pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the state in a file ("-" reads standard input).
    Classify(ClassifyArgs),
    /// Same as `classify --ilos`.
    Reduce(ClassifyArgs),
    /// Print the canonical state file of a class.
    Canonical {
        /// One of: 000, "0_1 Psi+_23", "0_2 Psi+_13", "0_3 Psi+_12", GHZ, W, GHZ4, 00, Psi+.
        name: String,
        /// Emit the JSON state format.
        #[arg(long)]
        json: bool,
    },
    /// Upper bound on the number of (N+1)-qubit classes given M(N) classes of N qubits.
    Bound { m_n: u64, n: u64 },
}

#[derive(Args)]
struct ClassifyArgs {
    input: PathBuf,
    /// Relative rank tolerance; the degeneracy tolerance is set to ten times this.
    #[arg(long)]
    tol: Option<f64>,
    /// Include local operators reducing a three-qubit state to canonical form.
    #[arg(long)]
    ilos: bool,
    /// Emit a JSON report.
    #[arg(long)]
    json: bool,
    /// Subsystem whose coefficient matrix is analysed (1-based).
    #[arg(long, default_value_t = 1)]
    pivot: usize,
    /// Read the input as a JSON state file.
    #[arg(long)]
    json_in: bool,
    /// Largest number of qubits accepted for descriptors.
    #[arg(long, default_value_t = 4)]
    max_depth: usize,
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| CliError {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(s)
}

fn classify(args: ClassifyArgs, force_ilos: bool) -> Result<String, CliError> {
    let opts = ClassifyOptions {
        tol: args.tol,
        ilos: args.ilos || force_ilos,
        pivot: args.pivot,
        json_in: args.json_in,
        max_depth: args.max_depth,
    };
    let report = commands::classify_source(&read_input(&args.input)?, &opts)?;
    Ok(if args.json { report.to_json() } else { report.to_text() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Classify(a) => classify(a, false),
        Command::Reduce(a) => classify(a, true),
        Command::Canonical { name, json } => commands::canonical(&name, json),
        Command::Bound { m_n, n } => commands::bound(m_n, n),
    };
    match out {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("slocc: {e}");
            ExitCode::from(e.code)
        }
    }
}
