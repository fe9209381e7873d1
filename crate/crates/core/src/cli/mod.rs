//! The `pairbound` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
//! 3 precondition violation (infeasible witness, scan cap exceeded),
//! 4 theorem violation.

pub mod ingest;
pub mod table;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::json;

use crate::bounding::{
    exchange_transform, feasible, optimality_report, theorem_check, verify_certificate,
    BoundingError, BoundingInstance, Direction, DEFAULT_CAP,
};
use crate::certificate::{from_json, to_json};
use crate::laws::check_laws;
use crate::matching::{enumerate_matchings, sort_input, Matching, MatchingError, SortedInput};
use crate::semigroup::{Carrier, Element};

use ingest::{ingest, InputSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandKind {
    /// Symmetric matching, its Max/Min and the brute-force optimality verdict.
    Solve,
    /// Stream every canonical matching.
    Enumerate,
    /// Build an exchange certificate for a feasible witness.
    Certify,
    /// Check a certificate file.
    Verify,
    /// Table of every matching with pair values, Max and Min.
    Table,
    /// Sample the carrier laws.
    Lawcheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Add,
    Radd,
    Mul,
    Lexadd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Markdown,
    Json,
    Plain,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "pairbound",
    version,
    about = "Symmetric pairings, exchange certificates and minimax/maximin checks in ordered semigroups"
)]
pub struct Cli {
    pub command: CommandKind,
    /// Carrier operation.
    #[arg(long, value_enum, default_value = "add")]
    pub op: OpArg,
    /// Vector dimension for `lexadd`.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum, default_value = "upper")]
    pub direction: DirectionArg,
    /// The bound N.
    #[arg(long, allow_hyphen_values = true)]
    pub bound: Option<String>,
    /// CSV or JSON-lines file with the elements.
    #[arg(long, conflicts_with = "values")]
    pub input: Option<PathBuf>,
    /// Comma-separated element literals.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    /// Use every JSON-lines line instead of only the first.
    #[arg(long)]
    pub all: bool,
    /// Witness matching, e.g. "(1,4)(2,6)(3,5)".
    #[arg(long)]
    pub witness: Option<String>,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: OutputFormat,
    /// Largest n scanned exhaustively.
    #[arg(long, env = "PAIRBOUND_CAP")]
    pub cap: Option<usize>,
    /// Seed for `lawcheck` sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Quadruples sampled by `lawcheck`.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Certificate path: written by `certify`, read by `verify`.
    #[arg(long)]
    pub cert: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    VerificationFailed,
    ParseError,
    Precondition,
    TheoremViolation,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::VerificationFailed => 1,
            ExitStatus::ParseError => 2,
            ExitStatus::Precondition => 3,
            ExitStatus::TheoremViolation => 4,
        }
    }
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub carrier: Carrier,
    pub direction: Direction,
    pub bound: Option<Element>,
    pub source: Option<InputSource>,
    pub all: bool,
    pub witness: Option<Matching>,
    pub format: OutputFormat,
    pub cap: usize,
    pub seed: u64,
    pub samples: usize,
    pub cert: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure {
    status: ExitStatus,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        status: ExitStatus::ParseError,
        message: message.into(),
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        usage(format!("I/O error: {e}"))
    }
}

impl From<BoundingError> for Failure {
    fn from(e: BoundingError) -> Self {
        let status = match &e {
            BoundingError::TheoremViolation(_) => ExitStatus::TheoremViolation,
            BoundingError::Semigroup(_) => ExitStatus::ParseError,
            BoundingError::InfeasibleWitness(_)
            | BoundingError::CapExceeded { .. }
            | BoundingError::Matching(_) => ExitStatus::Precondition,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

impl From<MatchingError> for Failure {
    fn from(e: MatchingError) -> Self {
        BoundingError::from(e).into()
    }
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, String> {
        let carrier = match cli.op {
            OpArg::Add => Carrier::IntegerAdd,
            OpArg::Radd => Carrier::RationalAdd,
            OpArg::Mul => Carrier::PositiveRationalMul,
            OpArg::Lexadd => match cli.dim {
                Some(dim) if dim > 0 => Carrier::NaturalVectorLexAdd { dim },
                _ => return Err("--op lexadd requires --dim K with K >= 1".into()),
            },
        };
        if cli.dim.is_some() && cli.op != OpArg::Lexadd {
            return Err("--dim only applies to --op lexadd".into());
        }
        let direction = match cli.direction {
            DirectionArg::Upper => Direction::UpperStrict,
            DirectionArg::Lower => Direction::LowerStrict,
        };
        let bound = cli
            .bound
            .as_deref()
            .map(|b| Element::parse(carrier, b))
            .transpose()
            .map_err(|e| format!("--bound: {e}"))?;
        let witness = cli
            .witness
            .as_deref()
            .map(str::parse::<Matching>)
            .transpose()
            .map_err(|e| format!("--witness: {e}"))?;
        let source = match (&cli.input, &cli.values) {
            (Some(path), _) => Some(InputSource::from_path(path).map_err(|e| e.to_string())?),
            (None, Some(values)) => Some(InputSource::Values(values.clone())),
            (None, None) => None,
        };

        use CommandKind::*;
        let command = cli.command;
        let name = format!("{command:?}").to_lowercase();
        if matches!(command, Table | Enumerate) && bound.is_some() {
            return Err(format!("--bound is not accepted by `{name}`"));
        }
        if command == Certify && (bound.is_none() || witness.is_none()) {
            return Err("`certify` requires --bound and --witness".into());
        }
        if command == Solve && witness.is_some() && bound.is_none() {
            return Err("`solve --witness` requires --bound".into());
        }
        if matches!(command, Solve | Enumerate | Certify | Table) && source.is_none() {
            return Err(format!("`{name}` requires --input or --values"));
        }
        if command == Verify && cli.cert.is_none() {
            return Err("`verify` requires --cert PATH".into());
        }

        Ok(RunConfig {
            command,
            carrier,
            direction,
            bound,
            source,
            all: cli.all,
            witness,
            format: cli.format,
            cap: cli.cap.unwrap_or(DEFAULT_CAP),
            seed: cli.seed.unwrap_or(0),
            samples: cli.samples,
            cert: cli.cert.clone(),
        })
    }

    fn load_input(&self) -> Result<SortedInput, Failure> {
        let source = self.source.as_ref().expect("validated");
        let elements = ingest(source, self.carrier, self.all).map_err(|e| usage(e.to_string()))?;
        Ok(sort_input(elements)?)
    }

    fn check_cap(&self, input: &SortedInput) -> Result<(), Failure> {
        if input.n() > self.cap {
            return Err(BoundingError::CapExceeded {
                n: input.n(),
                cap: self.cap,
            }
            .into());
        }
        Ok(())
    }
}

/// Validates and runs a parsed command line; errors go to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let outcome = RunConfig::from_cli(cli)
        .map_err(usage)
        .and_then(|config| execute(&config, out));
    match outcome {
        Ok(status) => status,
        Err(failure) => {
            let _ = writeln!(err, "pairbound: {}", failure.message);
            failure.status
        }
    }
}

/// Runs a validated configuration, writing the document to `out`.
pub fn run_config(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    match execute(config, out) {
        Ok(status) => status,
        Err(failure) => {
            let _ = writeln!(err, "pairbound: {}", failure.message);
            failure.status
        }
    }
}

fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<ExitStatus, Failure> {
    match config.command {
        CommandKind::Table => {
            let input = config.load_input()?;
            config.check_cap(&input)?;
            table::write_table(&input, config.format, out)?;
            Ok(ExitStatus::Success)
        }
        CommandKind::Enumerate => {
            let input = config.load_input()?;
            config.check_cap(&input)?;
            for (idx, m) in enumerate_matchings(input.n()).enumerate() {
                match config.format {
                    OutputFormat::Json => writeln!(
                        out,
                        "{}",
                        json!({ "index": idx + 1, "matching": m.to_string() })
                    )?,
                    _ => writeln!(out, "{m}")?,
                }
            }
            Ok(ExitStatus::Success)
        }
        CommandKind::Solve => solve(config, out),
        CommandKind::Certify => certify(config, out),
        CommandKind::Verify => verify(config, out),
        CommandKind::Lawcheck => lawcheck(config, out),
    }
}

fn write_fields(
    format: OutputFormat,
    fields: &[(&str, String)],
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        OutputFormat::Markdown => {
            writeln!(out, "| quantity | value |")?;
            writeln!(out, "|---|---|")?;
            for (k, v) in fields {
                writeln!(out, "| {k} | {v} |")?;
            }
        }
        OutputFormat::Plain => {
            for (k, v) in fields {
                writeln!(out, "{k}: {v}")?;
            }
        }
        OutputFormat::Json => {
            let map: serde_json::Map<String, serde_json::Value> = fields
                .iter()
                .map(|(k, v)| (k.replace(' ', "_"), serde_json::Value::String(v.clone())))
                .collect();
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&map).expect("json map")
            )?;
        }
    }
    Ok(())
}

fn solve(config: &RunConfig, out: &mut dyn Write) -> Result<ExitStatus, Failure> {
    let input = config.load_input()?;
    let report = optimality_report(&input, config.cap)?;
    let values: Vec<String> = report
        .symmetric
        .pair_values
        .iter()
        .map(ToString::to_string)
        .collect();
    let mut fields = vec![
        ("carrier", input.carrier().to_string()),
        (
            "elements",
            input
                .elements()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", "),
        ),
        ("symmetric matching", report.symmetric.matching.to_string()),
        ("pair values", values.join(", ")),
        ("Max", report.symmetric.max_value.to_string()),
        ("Min", report.symmetric.min_value.to_string()),
        ("minimax", report.minimax.1.to_string()),
        ("minimax matching", report.minimax.0.to_string()),
        ("maximin", report.maximin.1.to_string()),
        ("maximin matching", report.maximin.0.to_string()),
        ("matchings scanned", report.scanned.to_string()),
    ];

    if let Some(bound) = &config.bound {
        let inst = BoundingInstance::new(input.clone(), bound.clone(), config.direction)?;
        fields.push(("bound", format!("{} {bound}", config.direction.strict())));
        let symmetric_ok = feasible(&report.symmetric.matching, &inst)?;
        fields.push(("symmetric feasible", yes_no(symmetric_ok).into()));
        if let Some(witness) = &config.witness {
            theorem_check(&inst, witness)?;
            fields.push(("witness", witness.to_string()));
            fields.push(("theorem check", "holds".into()));
        }
    }
    fields.push((
        "verdict",
        if report.passed { "pass" } else { "fail" }.into(),
    ));
    write_fields(config.format, &fields, out)?;

    if report.passed {
        Ok(ExitStatus::Success)
    } else {
        Err(Failure {
            status: ExitStatus::TheoremViolation,
            message: format!(
                "symmetric matching {} is not optimal: Max {} vs minimax {}, Min {} vs maximin {}",
                report.symmetric.matching,
                report.symmetric.max_value,
                report.minimax.1,
                report.symmetric.min_value,
                report.maximin.1
            ),
        })
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn certify(config: &RunConfig, out: &mut dyn Write) -> Result<ExitStatus, Failure> {
    let input = config.load_input()?;
    let bound = config.bound.clone().expect("validated");
    let witness = config.witness.as_ref().expect("validated");
    let inst = BoundingInstance::new(input, bound, config.direction)?;
    let cert = exchange_transform(witness, &inst)?;
    let text = to_json(&cert);
    match &config.cert {
        Some(path) => {
            fs::write(path, &text)?;
            let fields = [
                ("certificate", path.display().to_string()),
                ("witness", cert.witness.to_string()),
                ("steps", cert.steps.len().to_string()),
                ("final", cert.final_matching.to_string()),
            ];
            write_fields(config.format, &fields, out)?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(ExitStatus::Success)
}

fn verify(config: &RunConfig, out: &mut dyn Write) -> Result<ExitStatus, Failure> {
    let path = config.cert.as_ref().expect("validated");
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let cert = from_json(&text).map_err(|e| usage(e.to_string()))?;
    let verdict = verify_certificate(&cert);
    let mut fields = vec![
        ("certificate", path.display().to_string()),
        ("steps", cert.steps.len().to_string()),
        ("valid", yes_no(verdict.is_ok()).to_string()),
    ];
    if let Err(rejection) = &verdict {
        fields.push(("reason", rejection.reason.to_string()));
        fields.push(("detail", rejection.detail.clone()));
    }
    write_fields(config.format, &fields, out)?;
    Ok(match verdict {
        Ok(()) => ExitStatus::Success,
        Err(_) => ExitStatus::VerificationFailed,
    })
}

fn lawcheck(config: &RunConfig, out: &mut dyn Write) -> Result<ExitStatus, Failure> {
    let report = check_laws(config.carrier, config.samples, config.seed)
        .map_err(|e| usage(e.to_string()))?;
    if config.format == OutputFormat::Json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("report")
        )?;
    } else {
        let mut fields = vec![
            ("carrier", report.carrier.clone()),
            ("samples", report.samples.to_string()),
            ("seed", report.seed.to_string()),
            (
                "commutativity violations",
                report.commutativity_violations.to_string(),
            ),
            (
                "associativity violations",
                report.associativity_violations.to_string(),
            ),
            (
                "total order violations",
                report.total_order_violations.to_string(),
            ),
            (
                "monotonicity violations",
                report.monotonicity_violations.to_string(),
            ),
        ];
        fields.extend(
            report
                .examples
                .iter()
                .map(|e| ("counterexample", e.clone())),
        );
        fields.push((
            "verdict",
            if report.passed() { "pass" } else { "fail" }.into(),
        ));
        write_fields(config.format, &fields, out)?;
    }
    Ok(if report.passed() {
        ExitStatus::Success
    } else {
        ExitStatus::VerificationFailed
    })
}
