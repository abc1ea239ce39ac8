use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use codesim::grading::PolicyKind;
use codesim::pipeline::{self, Emission, RunConfig};

#[derive(Parser)]
#[command(
    name = "codesim",
    version,
    about = "Detects mutual plagiarism among contest submissions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a directory of submissions and emit similarity reports
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Directory holding one source file per participant
    #[arg(long, value_name = "DIR")]
    input: PathBuf,

    /// File patterns selecting submissions, comma-separated
    #[arg(long, value_name = "PATTERN", value_delimiter = ',',
          default_values_t = pipeline::default_globs())]
    glob: Vec<String>,

    /// Similarity threshold for the plagiarism relation, in (0, 1]
    #[arg(long, value_name = "E", default_value_t = 0.90)]
    epsilon: f64,

    /// Grading policy
    #[arg(long, value_enum, value_name = "POLICY", default_value_t = PolicyArg::Proportional)]
    policy: PolicyArg,

    /// Histogram bin width for similarity and propensity
    #[arg(long = "bin-width-sim", value_name = "W", default_value_t = 0.05)]
    bin_width_sim: f64,

    /// Histogram bin width for edit distance
    #[arg(long = "bin-width-dist", value_name = "W", default_value_t = 50.0)]
    bin_width_dist: f64,

    /// Directory the artifacts are written to
    #[arg(long, value_name = "DIR", default_value = "analysis")]
    out: PathBuf,

    /// Artifacts to write, comma-separated
    #[arg(
        long,
        value_name = "LIST",
        value_delimiter = ',',
        default_value = "json,csv,dot,hist,stats"
    )]
    emit: Vec<EmitArg>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Proportional,
    Binary,
    Complement,
}

impl From<PolicyArg> for PolicyKind {
    fn from(p: PolicyArg) -> PolicyKind {
        match p {
            PolicyArg::Proportional => PolicyKind::Proportional,
            PolicyArg::Binary => PolicyKind::Binary,
            PolicyArg::Complement => PolicyKind::Complement,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitArg {
    Json,
    Csv,
    Dot,
    Hist,
    Stats,
}

impl From<EmitArg> for Emission {
    fn from(e: EmitArg) -> Emission {
        match e {
            EmitArg::Json => Emission::Json,
            EmitArg::Csv => Emission::Csv,
            EmitArg::Dot => Emission::Dot,
            EmitArg::Hist => Emission::Hist,
            EmitArg::Stats => Emission::Stats,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems exit 1; --help and --version exit 0.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let Command::Analyze(args) = cli.command;
    let config = RunConfig {
        input_dir: args.input,
        file_glob: args.glob,
        epsilon: args.epsilon,
        policy: args.policy.into(),
        bin_width_similarity: args.bin_width_sim,
        bin_width_distance: args.bin_width_dist,
        output_dir: args.out,
        emit: args
            .emit
            .into_iter()
            .map(Emission::from)
            .collect::<BTreeSet<_>>(),
    };

    match pipeline::run_pipeline(&config) {
        Ok(report) => {
            for warning in &report.warnings {
                eprintln!("warning: {warning}");
            }
            println!(
                "{} submissions, {} pairs, {} clusters (epsilon {}) -> {}",
                report.k,
                report.pair_count,
                report.clusters.len(),
                report.epsilon,
                config.output_dir.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
