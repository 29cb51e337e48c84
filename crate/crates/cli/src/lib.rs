//! Command-line front end for `accp-core`.
//!
//! Every subcommand emits one JSON [`CertificateEnvelope`]. Exit codes:
//! `0` when every executed check passed, `2` when the computation finished
//! but some check failed (the document is still written), `1` on usage or
//! input errors.

mod commands;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use accp_core::report::{all_passed, Check};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use commands::*;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "accp",
    version,
    about = "Exact certificates for atomicity and ACCP in monoids"
)]
pub struct Cli {
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "parameters", rename_all = "kebab-case")]
pub enum Command {
    /// Build the rank-2 lattice monoid that is atomic but fails ACCP.
    Construct(ConstructArgs),
    /// Decide the atoms of a lattice monoid, a construction stage, or a Puiseux family.
    Atoms(AtomsArgs),
    /// Emit a strictly ascending chain of principal ideals.
    Chain(ChainArgs),
    /// Bounded membership in a lattice monoid or a truncated Puiseux monoid.
    Member(MemberArgs),
    /// Classify an abelian group for hereditary atomicity.
    ClassifyGroup(ClassifyGroupArgs),
    /// Classify a group algebra for hereditary atomicity.
    ClassifyAlgebra(ClassifyAlgebraArgs),
    /// p-th root of an element of F_p[G] for p-divisible G.
    Frobenius(FrobeniusArgs),
    /// Length sets of x and of 1 over reciprocal primes.
    Lengths(LengthsArgs),
    /// CSV and SVG plot data of a construction stage.
    Figure(FigureArgs),
    /// Truncation of Zaks' monoid.
    Zaks(ZaksArgs),
    /// Truncated generators of the rank-2 monoid inside N0*beta + Q.
    BetaMonoid(BetaMonoidArgs),
    /// Antimatter witness monoid of a group that is not hereditarily atomic.
    Witness(WitnessArgs),
    /// Split a rational q > 1 into two rationals greater than 1.
    Split(SplitArgs),
    /// Bounded irreducibility search in F_p[x; M] for a truncated exponent monoid.
    Search(SearchArgs),
    /// Digit expansion in the sparse reciprocal-prime monoid.
    NormalForm(NormalFormArgs),
    /// Re-run the command recorded in a certificate and compare.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Construct(_) => "construct",
            Command::Atoms(_) => "atoms",
            Command::Chain(_) => "chain",
            Command::Member(_) => "member",
            Command::ClassifyGroup(_) => "classify-group",
            Command::ClassifyAlgebra(_) => "classify-algebra",
            Command::Frobenius(_) => "frobenius",
            Command::Lengths(_) => "lengths",
            Command::Figure(_) => "figure",
            Command::Zaks(_) => "zaks",
            Command::BetaMonoid(_) => "beta-monoid",
            Command::Witness(_) => "witness",
            Command::Split(_) => "split",
            Command::Search(_) => "search",
            Command::NormalForm(_) => "normal-form",
            Command::Verify(_) => "verify",
        }
    }
}

/// The document every subcommand emits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateEnvelope {
    pub command: String,
    pub parameters: serde_json::Value,
    pub result: serde_json::Value,
    /// Only checks that were actually executed.
    pub verification: Vec<Check>,
    pub version: String,
}

impl CertificateEnvelope {
    pub fn passed(&self) -> bool {
        all_passed(&self.verification)
    }

    /// The command that produced this document.
    pub fn recorded_command(&self) -> Result<Command, String> {
        serde_json::from_value(serde_json::json!({
            "command": self.command,
            "parameters": self.parameters,
        }))
        .map_err(|e| format!("cannot recover the recorded command: {e}"))
    }
}

/// Computed payload plus the checks run on it and any side files.
pub struct Outcome {
    pub result: serde_json::Value,
    pub checks: Vec<Check>,
    pub files: Vec<(PathBuf, String)>,
}

impl Outcome {
    fn new<T: Serialize>(result: &T, checks: Vec<Check>) -> Result<Self, String> {
        Ok(Outcome {
            result: serde_json::to_value(result).map_err(|e| e.to_string())?,
            checks,
            files: Vec::new(),
        })
    }
}

/// Runs a parsed command and wraps its outcome; side files are not written.
pub fn execute(cmd: &Command) -> Result<(CertificateEnvelope, Vec<(PathBuf, String)>), String> {
    let outcome = match cmd {
        Command::Construct(a) => construct(a),
        Command::Atoms(a) => atoms(a),
        Command::Chain(a) => chain(a),
        Command::Member(a) => member(a),
        Command::ClassifyGroup(a) => classify_group(a),
        Command::ClassifyAlgebra(a) => classify_algebra(a),
        Command::Frobenius(a) => frobenius(a),
        Command::Lengths(a) => lengths(a),
        Command::Figure(a) => figure(a),
        Command::Zaks(a) => zaks(a),
        Command::BetaMonoid(a) => beta_monoid(a),
        Command::Witness(a) => witness(a),
        Command::Split(a) => split(a),
        Command::Search(a) => search(a),
        Command::NormalForm(a) => normal_form(a),
        Command::Verify(a) => verify(a),
    }?;
    let tagged = serde_json::to_value(cmd).map_err(|e| e.to_string())?;
    let envelope = CertificateEnvelope {
        command: cmd.name().to_string(),
        parameters: tagged["parameters"].clone(),
        result: outcome.result,
        verification: outcome.checks,
        version: VERSION.to_string(),
    };
    Ok((envelope, outcome.files))
}

/// Pretty JSON with a trailing newline.
pub fn render(envelope: &CertificateEnvelope) -> String {
    let mut s = serde_json::to_string_pretty(envelope).expect("envelope is serializable");
    s.push('\n');
    s
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

/// `argv[0]` is the program name.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let (envelope, files) = match execute(&cli.command) {
        Ok(x) => x,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 1;
        }
    };
    for (path, content) in &files {
        if let Err(e) = fs::write(path, content) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return 1;
        }
    }
    let doc = render(&envelope);
    let written = match &cli.out {
        Some(path) => {
            fs::write(path, &doc).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => out.write_all(doc.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return 1;
    }
    if envelope.passed() {
        0
    } else {
        let failed: Vec<&str> = envelope
            .verification
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        let _ = writeln!(err, "verification failed: {}", failed.join("; "));
        2
    }
}
