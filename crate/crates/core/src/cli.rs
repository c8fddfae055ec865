//! Subcommands run against a parsed document.
//!
//! Every subcommand returns its full text output; the binary only adds
//! file handling and exit codes. Numbers are printed with
//! [`numfmt::sci12`](crate::numfmt::sci12) so output is stable byte for byte.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::dsl::Document;
use crate::linalg::{ComplexScalar, QuantumState};
use crate::measure::{self, MeasureError, Part};
use crate::network::{next_index, NetworkError};
use crate::numfmt::{complex_sci12, sci12};
use crate::paths::{Output, PathDiagram, PathError, DEFAULT_PATH_CAP};

/// Tolerance used by `verify`.
pub const VERIFY_TOL: f64 = 1e-10;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 1;
    pub const SEMANTIC: i32 = 2;
    pub const VERIFY: i32 = 3;
    pub const RESOURCE_CAP: i32 = 4;
    pub const INDEX: i32 = 5;
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Print the output state of a circuit.
    Eval(EvalArgs),
    /// List every path with its weight and running sum.
    Paths(PathsArgs),
    /// Sample measurement outcomes of a circuit.
    Sample(SampleArgs),
    /// Compare path sums with matrix products for all basis pairs.
    Verify(VerifyArgs),
    /// Contract the document's network.
    Contract(ContractArgs),
    /// Emit the laboratory diagram in DOT.
    Dot(DotArgs),
    /// Estimate part of <psi|U|psi> with the Hadamard test.
    HadamardTest(HadamardTestArgs),
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub circuit: String,
    #[arg(long)]
    pub input: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct PathsArgs {
    #[arg(long)]
    pub circuit: String,
    #[arg(long)]
    pub input: usize,
    #[arg(long)]
    pub output: Option<usize>,
    /// Refuse to enumerate more than this many paths.
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    pub max_paths: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub circuit: String,
    #[arg(long)]
    pub input: usize,
    #[arg(long)]
    pub shots: u64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub circuit: String,
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    pub max_paths: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct ContractArgs {
    /// Accepted for symmetry with the other subcommands; the network is
    /// always the one declared in the document.
    #[arg(long)]
    pub network: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct DotArgs {
    #[arg(long)]
    pub circuit: String,
    #[arg(long)]
    pub input: usize,
    /// Tag qubit lines as transmitted (T) or reflected (R).
    #[arg(long)]
    pub mirror_roles: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartArg {
    Re,
    Im,
}

impl From<PartArg> for Part {
    fn from(p: PartArg) -> Self {
        match p {
            PartArg::Re => Part::Real,
            PartArg::Im => Part::Imag,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct HadamardTestArgs {
    #[arg(long)]
    pub gate: String,
    #[arg(long)]
    pub state: String,
    #[arg(long, value_enum)]
    pub part: PartArg,
    #[arg(long)]
    pub shots: u64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CommandError {
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("{what} index {index} out of range for dimension {dim}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        dim: usize,
    },
    #[error("path cap exceeded: more than {cap} paths")]
    PathCap { cap: usize },
    #[error("{0}")]
    Semantic(String),
    /// Carries the full FAIL report.
    #[error("verification failed")]
    Verification(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::UnknownName { .. } | CommandError::Semantic(_) => exit::SEMANTIC,
            CommandError::IndexOutOfRange { .. } => exit::INDEX,
            CommandError::PathCap { .. } => exit::RESOURCE_CAP,
            CommandError::Verification(_) => exit::VERIFY,
        }
    }
}

impl From<PathError> for CommandError {
    fn from(e: PathError) -> Self {
        match e {
            PathError::CapExceeded { cap } => CommandError::PathCap { cap },
            PathError::IndexOutOfRange { index, dim } => CommandError::IndexOutOfRange {
                what: "basis",
                index,
                dim,
            },
            other => CommandError::Semantic(other.to_string()),
        }
    }
}

impl From<MeasureError> for CommandError {
    fn from(e: MeasureError) -> Self {
        CommandError::Semantic(e.to_string())
    }
}

impl From<NetworkError> for CommandError {
    fn from(e: NetworkError) -> Self {
        CommandError::Semantic(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "qpath", no_binary_name = true)]
struct CommandLine {
    #[command(subcommand)]
    command: Command,
}

/// Parses a subcommand and its flags, without the program name or file.
pub fn parse_command<I, S>(args: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    CommandLine::try_parse_from(args).map(|c| c.command)
}

pub fn run_command(doc: &Document, command: &Command) -> Result<String, CommandError> {
    match command {
        Command::Eval(a) => eval(doc, a),
        Command::Paths(a) => paths(doc, a),
        Command::Sample(a) => sample(doc, a),
        Command::Verify(a) => verify(doc, a),
        Command::Contract(_) => contract(doc),
        Command::Dot(a) => dot(doc, a),
        Command::HadamardTest(a) => hadamard_test(doc, a),
    }
}

fn diagram(doc: &Document, circuit: &str, input: usize) -> Result<PathDiagram, CommandError> {
    let layers = doc
        .circuit(circuit)
        .ok_or_else(|| CommandError::UnknownName {
            kind: "circuit",
            name: circuit.to_string(),
        })?;
    let dim = layers[0].rows();
    if input >= dim {
        return Err(CommandError::IndexOutOfRange {
            what: "input",
            index: input,
            dim,
        });
    }
    Ok(PathDiagram::new(layers, input)?)
}

fn tuple(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn eval(doc: &Document, a: &EvalArgs) -> Result<String, CommandError> {
    let out = diagram(doc, &a.circuit, a.input)?.evolve();
    let mut s = format!("# eval circuit={} input={}\n", a.circuit, a.input);
    for (i, z) in out.amplitudes().iter().enumerate() {
        writeln!(s, "{i} {}", complex_sci12(*z)).unwrap();
    }
    Ok(s)
}

fn paths(doc: &Document, a: &PathsArgs) -> Result<String, CommandError> {
    let mut diagram = diagram(doc, &a.circuit, a.input)?.with_cap(a.max_paths);
    if let Some(j) = a.output {
        if j >= diagram.dim() {
            return Err(CommandError::IndexOutOfRange {
                what: "output",
                index: j,
                dim: diagram.dim(),
            });
        }
        diagram = diagram.with_output(Output::Fixed(j))?;
    }
    let list = diagram.enumerate_paths()?;
    let output = a.output.map_or("free".to_string(), |j| j.to_string());
    let mut s = format!(
        "# paths circuit={} input={} output={output} count={}\n# path weight running_sum\n",
        a.circuit,
        a.input,
        list.len()
    );
    // Running sums are kept per final basis value.
    let mut sums = vec![ComplexScalar::new(0.0, 0.0); diagram.dim()];
    for p in &list {
        let last = *p.indices.last().expect("at least one layer");
        sums[last] += p.weight;
        writeln!(
            s,
            "{} {} {}",
            tuple(&p.indices),
            complex_sci12(p.weight),
            complex_sci12(sums[last])
        )
        .unwrap();
    }
    let outputs: Vec<usize> = match a.output {
        Some(j) => vec![j],
        None => (0..diagram.dim()).collect(),
    };
    for j in outputs {
        writeln!(s, "# amplitude output={j} {}", complex_sci12(sums[j])).unwrap();
    }
    Ok(s)
}

fn sample(doc: &Document, a: &SampleArgs) -> Result<String, CommandError> {
    let diagram = diagram(doc, &a.circuit, a.input)?;
    let input = QuantumState::basis(diagram.dim(), a.input).expect("input checked");
    let probs = measure::born_probabilities(&diagram.composed(), &input)?;
    let record = measure::sample(&probs, a.shots, a.seed)?;
    Ok(format!(
        "# sample circuit={} input={}\n{}",
        a.circuit,
        a.input,
        record.to_report()
    ))
}

fn verify(doc: &Document, a: &VerifyArgs) -> Result<String, CommandError> {
    let base = diagram(doc, &a.circuit, 0)?.with_cap(a.max_paths);
    let d = base.dim();
    let mut worst = 0.0f64;
    let mut worst_pair = (0, 0);
    for i in 0..d {
        let diagram = PathDiagram::new(base.layers().to_vec(), i)?.with_cap(a.max_paths);
        for j in 0..d {
            let dev = (diagram.path_sum_amplitude(j)? - diagram.matrix_amplitude(j)?).norm();
            if dev > worst {
                worst = dev;
                worst_pair = (i, j);
            }
        }
    }
    let verdict = if worst <= VERIFY_TOL { "PASS" } else { "FAIL" };
    let report = format!(
        "# verify circuit={} pairs={} tolerance={}\n{verdict} max_deviation={} at input={} output={}\n",
        a.circuit,
        d * d,
        sci12(VERIFY_TOL),
        sci12(worst),
        worst_pair.0,
        worst_pair.1
    );
    if worst <= VERIFY_TOL {
        Ok(report)
    } else {
        Err(CommandError::Verification(report))
    }
}

fn contract(doc: &Document) -> Result<String, CommandError> {
    let net = doc.network()?;
    if net.nodes().is_empty() {
        return Err(CommandError::Semantic(
            "document declares no network nodes".into(),
        ));
    }
    let t = net.contract()?;
    let legs: Vec<String> = t.legs().iter().map(|l| l.name.clone()).collect();
    let dims: Vec<String> = t.dims().iter().map(usize::to_string).collect();
    let mut s = format!(
        "# contract legs=({}) dims=({})\n",
        legs.join(","),
        dims.join(",")
    );
    let dims = t.dims();
    let mut index = vec![0; dims.len()];
    for z in t.data() {
        writeln!(s, "{} {}", tuple(&index), complex_sci12(*z)).unwrap();
        next_index(&mut index, &dims);
    }
    Ok(s)
}

fn dot(doc: &Document, a: &DotArgs) -> Result<String, CommandError> {
    let lab = diagram(doc, &a.circuit, a.input)?.lab_diagram();
    if a.mirror_roles {
        if doc.dim() != Some(2) {
            return Err(CommandError::Semantic(
                "--mirror-roles needs a qubit (dim 2) document".into(),
            ));
        }
        Ok(lab.to_dot_mirror_roles())
    } else {
        Ok(lab.to_dot())
    }
}

fn hadamard_test(doc: &Document, a: &HadamardTestArgs) -> Result<String, CommandError> {
    let u = doc.gate(&a.gate).ok_or_else(|| CommandError::UnknownName {
        kind: "gate",
        name: a.gate.clone(),
    })?;
    let psi = doc
        .state(&a.state)
        .ok_or_else(|| CommandError::UnknownName {
            kind: "state",
            name: a.state.clone(),
        })?;
    let r = measure::hadamard_test(u, psi, a.part.into(), a.shots, a.seed)?;
    let part = match a.part {
        PartArg::Re => "re",
        PartArg::Im => "im",
    };
    let mut s = format!(
        "# hadamard-test gate={} state={} part={part}\n",
        a.gate, a.state
    );
    writeln!(s, "expectation {}", complex_sci12(r.expectation)).unwrap();
    writeln!(s, "exact_p0 {}", sci12(r.exact_p0)).unwrap();
    writeln!(s, "sampled_p0 {}", sci12(r.sampled_p0)).unwrap();
    writeln!(s, "exact {}", sci12(r.exact_value())).unwrap();
    writeln!(s, "estimate {}", sci12(r.estimate)).unwrap();
    writeln!(
        s,
        "abs_error {}",
        sci12((r.estimate - r.exact_value()).abs())
    )
    .unwrap();
    s.push_str(&r.record.to_report());
    Ok(s)
}
