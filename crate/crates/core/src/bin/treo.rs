use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use treo::cli::{self, CliError, CompileRequest, Format};

/// Compile, check and simulate Treo connectors.
#[derive(Parser)]
#[command(name = "treo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Flatten the main definition and write it as JSON or DOT.
    Compile {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        /// Output file; stdout when absent.
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Compile without writing output and report warnings.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Simulate the composed automaton against an environment script.
    Run {
        #[command(flatten)]
        common: Common,
        /// One step per line: `offers: p=v, q=w ; ready: r, s`.
        script: PathBuf,
        /// Number of steps; defaults to the number of script lines.
        #[arg(long)]
        steps: Option<usize>,
        /// Trace file; stdout when absent.
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Entry file.
    file: PathBuf,
    /// Main definition; defaults to the last one in the file.
    #[arg(short)]
    m: Option<String>,
    /// Extra module directory, searched after TREO_PATH.
    #[arg(short = 'I')]
    include: Vec<PathBuf>,
    #[arg(long, default_value = "ca")]
    sort: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Reject definitions that refer to themselves.
    #[arg(long)]
    strict_no_recursion: bool,
    /// Drop node components with one input and one output.
    #[arg(long)]
    optimize_nodes: bool,
    #[arg(long, default_value_t = 64)]
    recursion_depth: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
}

impl Common {
    fn request(self, format: Format) -> CompileRequest {
        let mut search_paths: Vec<PathBuf> = std::env::var_os("TREO_PATH")
            .map(|v| std::env::split_paths(&v).collect())
            .unwrap_or_default();
        search_paths.extend(self.include);
        CompileRequest {
            entry: self.file,
            main: self.m,
            search_paths,
            sort: self.sort,
            strict_no_recursion: self.strict_no_recursion,
            optimize_nodes: self.optimize_nodes,
            recursion_depth: self.recursion_depth,
            seed: self.seed,
            format,
        }
    }
}

fn write(out: Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| {
            CliError::new(cli::EXIT_IO, format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Compile { common, format, o } => {
            let format = match format {
                OutputFormat::Json => Format::Json,
                OutputFormat::Dot => Format::Dot,
            };
            cli::compile(&common.request(format)).and_then(|text| write(o, &text))
        }
        Command::Check { common } => cli::check(&common.request(Format::Json)).map(|warnings| {
            for w in warnings {
                eprintln!("{w}");
            }
        }),
        Command::Run {
            common,
            script,
            steps,
            o,
        } => cli::run(&common.request(Format::Json), &script, steps).and_then(|text| write(o, &text)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
