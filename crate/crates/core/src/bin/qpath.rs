use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qpath::cli::{
    self, exit, Command, ContractArgs, DotArgs, EvalArgs, HadamardTestArgs, PathsArgs, SampleArgs,
    VerifyArgs,
};

/// Evaluate, enumerate and check quantum processes described in `.qpd` files.
#[derive(Debug, Parser)]
#[command(name = "qpath", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Args)]
struct On<T: Args> {
    /// Document to load.
    file: PathBuf,
    #[command(flatten)]
    args: T,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Print the output state of a circuit.
    Eval(On<EvalArgs>),
    /// List every path with its weight and running sum.
    Paths(On<PathsArgs>),
    /// Sample measurement outcomes of a circuit.
    Sample(On<SampleArgs>),
    /// Compare path sums with matrix products for all basis pairs.
    Verify(On<VerifyArgs>),
    /// Contract the document's network.
    Contract(On<ContractArgs>),
    /// Emit the laboratory diagram in DOT.
    Dot(On<DotArgs>),
    /// Estimate part of <psi|U|psi> with the Hadamard test.
    HadamardTest(On<HadamardTestArgs>),
}

impl Sub {
    fn split(self) -> (PathBuf, Command) {
        match self {
            Sub::Eval(o) => (o.file, Command::Eval(o.args)),
            Sub::Paths(o) => (o.file, Command::Paths(o.args)),
            Sub::Sample(o) => (o.file, Command::Sample(o.args)),
            Sub::Verify(o) => (o.file, Command::Verify(o.args)),
            Sub::Contract(o) => (o.file, Command::Contract(o.args)),
            Sub::Dot(o) => (o.file, Command::Dot(o.args)),
            Sub::HadamardTest(o) => (o.file, Command::HadamardTest(o.args)),
        }
    }
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return code(if e.use_stderr() {
                exit::SEMANTIC
            } else {
                exit::OK
            });
        }
    };
    let (file, command) = cli.command.split();
    let bytes = match std::fs::read(&file) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return code(exit::SEMANTIC);
        }
    };
    let doc = match qpath::dsl::parse_bytes(&bytes) {
        Ok(doc) => doc,
        Err(diags) => {
            for d in diags {
                eprintln!("{}:{d}", file.display());
            }
            return code(exit::PARSE);
        }
    };
    let mut stdout = std::io::stdout().lock();
    match cli::run_command(&doc, &command) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            code(exit::OK)
        }
        Err(cli::CommandError::Verification(report)) => {
            let _ = stdout.write_all(report.as_bytes());
            code(exit::VERIFY)
        }
        Err(e) => {
            eprintln!("error: {e}");
            code(e.exit_code())
        }
    }
}
