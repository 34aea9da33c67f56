use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilg2::cli::{execute, Command, LambdaArg, Options, OutputFormat};
use nilg2::ScalarKind;

/// Torsion, instanton and classification checks for G2-structures on
/// 2-step nilpotent Lie algebras.
#[derive(Parser)]
#[command(name = "nilg2", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the document and the Lie algebra axioms.
    Validate(FileArgs),
    /// Torsion forms, torsion class and characteristic torsion.
    Torsion(FileArgs),
    /// Instanton test for the connection with parameter lambda.
    Instanton(FileArgs),
    /// Decide the instanton normal form and print a witness basis.
    Classify(FileArgs),
    /// Holonomy algebra and natural reductivity.
    Holonomy(FileArgs),
    /// Write the input document of a built-in family; lists them without a name.
    Example {
        name: Option<String>,
        /// Parameters such as 1, -1/3 or 0.5.
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
        #[arg(long, visible_alias = "emit")]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Args)]
struct FileArgs {
    path: PathBuf,
    /// A value such as 1, -1/3, 0.5, or `sweep`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    lambda: String,
    /// Extra sweep values, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    grid: Vec<String>,
    #[arg(long)]
    tol: Option<f64>,
    /// Exit with 5 when no tested lambda gives an instanton.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// Override the scalar mode of the document.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
}

fn options(a: &FileArgs) -> Options {
    Options {
        lambda: if a.lambda == "sweep" {
            LambdaArg::Sweep
        } else {
            LambdaArg::Value(a.lambda.clone())
        },
        grid: a.grid.clone(),
        tol: a.tol,
        strict: a.strict,
        out: a.out.clone(),
        format: match a.format {
            Format::Human => OutputFormat::Human,
            Format::Machine => OutputFormat::Machine,
        },
        mode: a.mode.map(|m| match m {
            Mode::Exact => ScalarKind::Exact,
            Mode::Float => ScalarKind::Float,
        }),
    }
}

/// Hyphenated parameters swallow a trailing `--out PATH`; pull it back out.
fn split_out(params: Vec<String>) -> (Vec<String>, Option<PathBuf>) {
    let mut kept = Vec::new();
    let mut out = None;
    let mut it = params.into_iter();
    while let Some(p) = it.next() {
        if p == "--out" || p == "--emit" {
            out = it.next().map(PathBuf::from);
        } else if let Some(v) = p
            .strip_prefix("--out=")
            .or_else(|| p.strip_prefix("--emit="))
        {
            out = Some(PathBuf::from(v));
        } else {
            kept.push(p);
        }
    }
    (kept, out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, opts) = match cli.command {
        Cmd::Validate(a) => (Command::Validate(a.path.clone()), options(&a)),
        Cmd::Torsion(a) => (Command::Torsion(a.path.clone()), options(&a)),
        Cmd::Instanton(a) => (Command::Instanton(a.path.clone()), options(&a)),
        Cmd::Classify(a) => (Command::Classify(a.path.clone()), options(&a)),
        Cmd::Holonomy(a) => (Command::Holonomy(a.path.clone()), options(&a)),
        Cmd::Example { name, params, out } => {
            let (params, trailing) = split_out(params);
            (
                Command::Example { name, params },
                Options {
                    out: out.or(trailing),
                    ..Options::default()
                },
            )
        }
    };
    let outcome = execute(&cmd, &opts);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
