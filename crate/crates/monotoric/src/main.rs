use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use monotoric::commands::{
    cmd_analyze, cmd_family, cmd_obstruct, cmd_oracle, cmd_quadrics, AnalyzeArgs, CommandError, EXIT_INPUT,
    EXIT_REJECTED, EXIT_VERIFY,
};
use monotoric::verify::{self, Suite, VerifyOptions};
use serde_json::Value;

/// Monotone Lagrangians from Delzant polytopes: exact invariants and divisibility obstructions.
#[derive(Parser)]
#[command(name = "monotoric", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline on a polytope file: structure, quadrics, invariants, topology.
    Analyze {
        path: PathBuf,
        /// Also run the numerical loop checks.
        #[arg(long)]
        oracle: bool,
        /// Reject polytopes that are not Delzant (exit 2).
        #[arg(long)]
        require_embedded: bool,
        /// Family tag to compare against, overriding recognition.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Polytope file to quadric system JSON.
    Quadrics {
        path: PathBuf,
        /// Read a quadric system and print the polytope instead.
        #[arg(long)]
        to_polytope: bool,
    },
    /// Print the polytope of a family tag such as `product-simplices:p=4,n=10,k=2`.
    Family { spec: String },
    /// Admissible minimal Maslov numbers for a homology profile.
    Obstruct {
        /// Profile JSON file.
        path: Option<PathBuf>,
        /// Profile tag: sphere-product:p=..,q=.. | sphere-power:p=..,m=.. | connected-sum-5:p=..
        #[arg(long, conflicts_with = "path")]
        family: Option<String>,
        #[arg(long = "L-dim")]
        l_dim: Option<usize>,
        /// Largest N examined (default dim L + 2).
        #[arg(long)]
        nmax: Option<u64>,
    },
    /// Numerical area and Maslov checks on a polytope file.
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Run the reproduction suite; JSON rows on stdout, a table on stderr.
    Verify {
        #[arg(long)]
        only: Option<Suite>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
    },
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn run(cli: Cli) -> Result<i32, CommandError> {
    match cli.command {
        Command::Analyze { path, oracle, require_embedded, family, seed, samples } => {
            let args = AnalyzeArgs { oracle, require_embedded, family, seed, samples };
            print(&cmd_analyze(&path, &args)?);
        }
        Command::Quadrics { path, to_polytope } => print(&cmd_quadrics(&path, to_polytope)?),
        Command::Family { spec } => print(&cmd_family(&spec)?),
        Command::Obstruct { path, family, l_dim, nmax } => {
            print(&cmd_obstruct(path.as_deref(), family.as_deref(), l_dim, nmax)?)
        }
        Command::Oracle { path, seed, samples } => {
            let (v, ok) = cmd_oracle(&path, seed, samples)?;
            print(&v);
            if !ok {
                eprintln!("some oracle checks failed");
                return Ok(EXIT_REJECTED);
            }
        }
        Command::Verify { only, seed, samples } => {
            let mut opts = VerifyOptions { seed, ..VerifyOptions::default() };
            if let Some(s) = samples {
                opts.samples = s;
            }
            let rows = verify::run(only, &opts);
            print(&Value::Array(rows.iter().map(|r| r.to_json()).collect()));
            eprint!("{}", verify::table(&rows));
            if verify::hard_failure(&rows) {
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
