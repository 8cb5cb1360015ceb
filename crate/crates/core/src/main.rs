use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qladder::cli;
use qladder::RouteMethod;

#[derive(Parser)]
#[command(
    name = "qladder",
    about = "Route quantum circuits onto hardware topologies via SWAP insertion or intermediate higher-dimensional qudit levels"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    SwapNaive,
    SwapBalanced,
    Ladder,
}

#[derive(Clone, Copy, ValueEnum)]
enum RestoreArg {
    On,
    Off,
}

fn method(method: MethodArg, restore: RestoreArg) -> RouteMethod {
    let restore = matches!(restore, RestoreArg::On);
    match method {
        MethodArg::SwapNaive => RouteMethod::SwapNaive { restore },
        MethodArg::SwapBalanced => RouteMethod::SwapBalanced { restore },
        MethodArg::Ladder => RouteMethod::QuditLadder,
    }
}

#[derive(Subcommand)]
enum Command {
    /// Route a circuit file onto a topology file.
    Route {
        circuit: PathBuf,
        topology: PathBuf,
        #[arg(long, value_enum, default_value = "ladder")]
        method: MethodArg,
        /// Mirror SWAPs to restore the initial mapping (SWAP methods only).
        #[arg(long, value_enum, default_value = "on")]
        restore: RestoreArg,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Route a circuit and verify the result against the original on the
    /// base subspace.
    Verify {
        circuit: PathBuf,
        topology: PathBuf,
        #[arg(long, value_enum, default_value = "ladder")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "on")]
        restore: RestoreArg,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Emit the ladder-versus-SWAP cost comparison as CSV.
    Table {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// CSV output path; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Simulate a circuit file and print the nonzero final amplitudes.
    Simulate {
        circuit: PathBuf,
        /// Basis input as one digit per wire (base 36 for large radices).
        #[arg(long)]
        input: Option<String>,
        /// Seed for a random base-subspace superposition input.
        #[arg(long)]
        random: Option<u64>,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let stdout = io::stdout();
    let mut out: Box<dyn Write> = Box::new(stdout.lock());
    let code = match args.command {
        Command::Route {
            circuit,
            topology,
            method: m,
            restore,
            out: out_path,
        } => cli::cmd_route(
            &circuit,
            &topology,
            method(m, restore),
            out_path.as_deref(),
            &mut out,
        ),
        Command::Verify {
            circuit,
            topology,
            method: m,
            restore,
            tol,
        } => cli::cmd_verify(&circuit, &topology, method(m, restore), tol, &mut out),
        Command::Table { n_min, n_max, csv } => {
            cli::cmd_table(n_min, n_max, csv.as_deref(), &mut out)
        }
        Command::Simulate {
            circuit,
            input,
            random,
        } => cli::cmd_simulate(&circuit, input.as_deref(), random, &mut out),
    };
    ExitCode::from(code as u8)
}
