//! The `detmor` command line: load a JSON instance, run one computation or
//! verification suite, print a deterministic JSON report.

pub mod codec;
mod commands;
pub mod spec;

use std::fmt;
use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use detmor_core::Limits;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::spec::InstanceSpec;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod exit {
    pub const PASS: i32 = 0;
    pub const COUNTEREXAMPLE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const LIMIT: i32 = 3;
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(detmor_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Core(detmor_core::Error::LimitExceeded { .. }) => exit::LIMIT,
            CliError::Core(detmor_core::Error::Counterexample(_)) => exit::COUNTEREXAMPLE,
            CliError::Core(_) => exit::INPUT,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            exit::LIMIT => "limit",
            exit::COUNTEREXAMPLE => "counterexample",
            _ => "input",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<detmor_core::Error> for CliError {
    fn from(e: detmor_core::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "detmor",
    version,
    about = "Determined morphisms over prime fields"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Default, Args)]
pub struct Options {
    /// Override the instance's prime field.
    #[arg(long, global = true, value_name = "P")]
    pub field: Option<u64>,
    /// Pool bound for test objects.
    #[arg(long, global = true, value_name = "L")]
    pub bound: Option<usize>,
    /// Largest finite set enumerated element by element.
    #[arg(long, global = true, value_name = "N")]
    pub limit: Option<u64>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Emit tables as TSV instead of JSON.
    #[arg(long, global = true)]
    pub tsv: bool,
    /// Print nothing; only the exit status matters.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Record wall-clock time (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Basis and dimension of Hom(M, N).
    Hom { input: String, m: String, n: String },
    /// Kernel and cokernel of a morphism.
    Kernel { input: String, f: String },
    /// Ext¹(X, Y) with a basis of extensions.
    Ext { input: String, x: String, y: String },
    /// The Auslander-Reiten translate.
    Tau {
        input: String,
        x: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Indecomposable summands.
    Decompose { input: String, x: String },
    /// Is f right (or left) determined by C?
    Determined {
        input: String,
        f: String,
        c: String,
        #[arg(long)]
        left: bool,
    },
    /// Representers of the submodules of Hom(C, Y).
    Represent {
        input: String,
        c: String,
        y: String,
        /// Only the submodule at this position in canonical order.
        #[arg(long)]
        index: Option<usize>,
    },
    /// A right minimal version of f.
    Minimize { input: String, f: String },
    /// The bijection table for (C, Y).
    Table { input: String, c: String, y: String },
    /// The almost split sequence ending at Y.
    AlmostSplit { input: String, y: String },
    /// Gram matrix of the trace pairing Ext¹(X, Y) x Hom(Y, X) (tube).
    SerrePairing { input: String, x: String, y: String },
    /// Run a named verification suite (`list` prints the names).
    Verify { input: String, suite: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Hom { .. } => "hom",
            Command::Kernel { .. } => "kernel",
            Command::Ext { .. } => "ext",
            Command::Tau { .. } => "tau",
            Command::Decompose { .. } => "decompose",
            Command::Determined { .. } => "determined",
            Command::Represent { .. } => "represent",
            Command::Minimize { .. } => "minimize",
            Command::Table { .. } => "table",
            Command::AlmostSplit { .. } => "almost-split",
            Command::SerrePairing { .. } => "serre-pairing",
            Command::Verify { .. } => "verify",
        }
    }

    fn input(&self) -> &str {
        match self {
            Command::Hom { input, .. }
            | Command::Kernel { input, .. }
            | Command::Ext { input, .. }
            | Command::Tau { input, .. }
            | Command::Decompose { input, .. }
            | Command::Determined { input, .. }
            | Command::Represent { input, .. }
            | Command::Minimize { input, .. }
            | Command::Table { input, .. }
            | Command::AlmostSplit { input, .. }
            | Command::SerrePairing { input, .. }
            | Command::Verify { input, .. } => input,
        }
    }
}

/// What a finished invocation prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (program name first).
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::INPUT
            } else {
                exit::PASS
            };
            let text = e.render().to_string();
            return if code == exit::PASS {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    execute(&cli, &echo, stdin)
}

fn execute(cli: &Cli, echo: &[String], stdin: &mut dyn Read) -> Outcome {
    let started = Instant::now();
    let mut report = json!({
        "version": VERSION,
        "command": {"name": cli.command.name(), "argv": echo},
        "wall_clock_ms": Value::Null,
    });
    let result = read_input(cli.command.input(), stdin).and_then(|text| {
        let mut spec = InstanceSpec::parse(&text)?;
        if let Some(p) = cli.opts.field {
            spec.field_p = p;
        }
        let canonical = serde_json::to_string(&spec).expect("instance specs serialize");
        report["instance"] = json!({
            "kind": spec.kind,
            "field_p": spec.field_p,
            "digest": hex::encode(Sha256::digest(canonical.as_bytes())),
        });
        let mut limits = Limits::default();
        if let Some(n) = cli.opts.limit {
            limits.enumeration = n;
        }
        if let Some(s) = cli.opts.seed {
            limits.seed = s;
        }
        let loaded = codec::load(&spec, limits, Some(&text))?;
        commands::exec(&loaded, &cli.command, &cli.opts)
    });
    if cli.opts.timing {
        report["wall_clock_ms"] = json!(started.elapsed().as_secs_f64() * 1e3);
    }
    let (code, stderr, tsv) = match result {
        Ok(resp) => {
            report["bounds"] = resp.bounds;
            report["result"] = resp.result;
            report["status"] = json!(if resp.passed {
                "pass"
            } else {
                "counterexample"
            });
            let code = if resp.passed {
                exit::PASS
            } else {
                exit::COUNTEREXAMPLE
            };
            (code, String::new(), resp.tsv)
        }
        Err(e) => {
            report["status"] = json!(e.kind());
            report["error"] = json!(e.to_string());
            (e.exit_code(), format!("error: {e}\n"), None)
        }
    };
    let stdout = if cli.opts.quiet {
        String::new()
    } else if let Some(tsv) = tsv.filter(|_| cli.opts.tsv) {
        tsv
    } else {
        let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
        s.push('\n');
        s
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
    } else {
        text =
            std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    }
    Ok(text)
}
