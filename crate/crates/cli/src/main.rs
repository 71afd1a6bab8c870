//! Command line for shelter placement under evacuation scenarios: evaluate
//! center sets, run the solvers, build hardness constructions, and emit
//! benchmark records.

mod bench;
mod builtin;
mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ppcp_core::exact::OracleLimits;
use ppcp_core::Error;

use bench::{OutputFormat, Suite};
use commands::Mode;

#[derive(Parser)]
#[command(
    name = "ppcp",
    version,
    about = "Probabilistic center placement under evacuation pressure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a shelter set: per-scenario radii plus both aggregates.
    Eval {
        /// Builtin instance name or path to a .json/.txt instance file.
        instance: String,
        /// Comma-separated shelter vertices, by label or id.
        #[arg(long, value_delimiter = ',', required = true)]
        centers: Vec<String>,
        /// Emit the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Place at most p shelters with the chosen solver.
    Solve {
        /// Builtin instance name or path to a .json/.txt instance file.
        instance: String,
        /// Shelter budget.
        #[arg(short)]
        p: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Emit the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Build the hardness construction from a planar base and verify its
    /// counting identities; writes the instance and the gadget registry.
    Reduce {
        /// Embedding source: fig4, a builtin graph name, or an instance file.
        embedding: String,
        /// Pairs inserted per drawn step, at least 2.
        #[arg(short)]
        q: u32,
        /// Directory receiving the instance and registry files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Emit the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Run a ratio suite and emit one record per instance.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Worker threads; affects wall time only, never output bytes.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Append wall-time columns (not reproducible across runs).
        #[arg(long)]
        timings: bool,
    },
}

fn limits_from_env() -> OracleLimits {
    if std::env::var("PPCP_GUARD_OVERRIDE").is_ok_and(|v| v == "1") {
        OracleLimits::unlimited()
    } else {
        OracleLimits::default()
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::GuardExceeded { .. } => 3,
        Error::Infeasible(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = limits_from_env();
    let ran = match cli.command {
        Command::Eval {
            instance,
            centers,
            json,
        } => commands::eval(&instance, &centers, json),
        Command::Solve {
            instance,
            p,
            mode,
            json,
        } => commands::solve(&instance, p, mode, json, &limits),
        Command::Reduce {
            embedding,
            q,
            out,
            json,
        } => commands::reduce(&embedding, q, &out, json, &limits),
        Command::Bench {
            suite,
            seed,
            format,
            parallel,
            timings,
        } => bench::run(suite, seed, format, parallel, timings, &limits),
    };
    match ran {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
