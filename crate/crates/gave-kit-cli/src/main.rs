//! Command-line front end for the GAVE solver kit.

mod cmd;
mod methods;
mod problems;
mod records;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "gave-kit",
    about = "Matrix-splitting solvers and convergence analysis for Ax - B|x| = b",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StartMode {
    /// The benchmark defaults: (-1/6, 0, ...) for the block-banded
    /// generators, zeros for the small comparison examples.
    PaperDefault,
    Zeros,
}

#[derive(Args)]
pub struct RunFlags {
    /// Relative-residual stopping tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Sweep cap.
    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,
    /// Start vector: paper-default, zeros, or file:PATH (Matrix Market).
    #[arg(long, default_value = "paper-default")]
    pub x0: String,
    /// Output format for records.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub output: OutputFormat,
    /// Write records to this file instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one method on one problem and report the outcome.
    Solve {
        /// Problem: ex41 | ex42 | ex43 | ex51:m=M[,blocks=B|m] |
        /// ex52:m=M[,blocks=B|m] | picard-remark:1|2 | files:A,B,b
        #[arg(long)]
        problem: String,
        /// Method name (grms, rms, sor, msorlike, fpi, fpiss, nsor, mfpi,
        /// mgsor, msor, picard, mn, nms, ssmn, nsorlike, mams).
        #[arg(long)]
        method: String,
        /// Scalar parameters, e.g. theta=0.96,zeta=0.01.
        #[arg(long)]
        params: Option<String>,
        /// Write the residual history (iteration,res) to this CSV file.
        #[arg(long)]
        trace: Option<String>,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Print convergence constants, bound matrices, and condition verdicts.
    Analyze {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        method: String,
        #[arg(long)]
        params: Option<String>,
        /// Output format for condition records.
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        output: OutputFormat,
        #[arg(long)]
        out: Option<String>,
    },
    /// Dominance check plus an iteration race between two methods.
    Compare {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        method_a: String,
        #[arg(long)]
        method_b: String,
        /// Parameters for method A.
        #[arg(long)]
        params_a: Option<String>,
        /// Parameters for method B.
        #[arg(long)]
        params_b: Option<String>,
        /// Race tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
        /// Write both residual histories (iteration,res_a,res_b) here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Full-factorial parameter sweep; rows sorted by iterations, then
    /// residual. GAVE_KIT_THREADS caps the cell-level concurrency.
    Sweep {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        method: String,
        /// Grid parameters, e.g. theta=0.90:1.00:0.01,zeta=0.01 (at most
        /// three swept parameters).
        #[arg(long)]
        params: String,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Re-run a fixed benchmark target and diff against the reference
    /// iteration counts.
    Reproduce {
        /// table1 | table2 | ex41 | ex42 | ex43 | picard-remark
        target: String,
        /// Block count for the table generators: a number or `m`.
        #[arg(long, default_value = "12")]
        blocks: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        output: OutputFormat,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve {
            problem,
            method,
            params,
            trace,
            flags,
        } => cmd::solve::run(&problem, &method, params.as_deref(), trace.as_deref(), &flags),
        Command::Analyze {
            problem,
            method,
            params,
            output,
            out,
        } => cmd::analyze::run(&problem, &method, params.as_deref(), output, out.as_deref()),
        Command::Compare {
            problem,
            method_a,
            method_b,
            params_a,
            params_b,
            tol,
            max_iter,
            out,
        } => cmd::compare::run(
            &problem,
            &method_a,
            &method_b,
            params_a.as_deref(),
            params_b.as_deref(),
            tol,
            max_iter,
            out.as_deref(),
        ),
        Command::Sweep {
            problem,
            method,
            params,
            flags,
        } => cmd::sweep::run(&problem, &method, &params, &flags),
        Command::Reproduce {
            target,
            blocks,
            output,
            out,
        } => cmd::reproduce::run(&target, &blocks, output, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
