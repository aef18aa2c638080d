mod pretty;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use tensorial_core::abelian::AbelianInvariants;
use tensorial_core::action::incompatible_example;
use tensorial_core::eta::EtaError;
use tensorial_core::fpgroup::EnumError;
use tensorial_core::input::{parse_corpus_text, parse_group_text, parse_pair_text, ActionSpec, GroupSpec, InputError, PairSpec};
use tensorial_core::verify::{run_corpus, Claim, Corpus, Summary, VerifyOptions};
use tensorial_core::{ActionPair, FiniteGroup, GroupError, IntMatrix};

/// Non-abelian tensor products of finite groups.
#[derive(Parser, Debug)]
#[command(name = "tensorial", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute G (x) H for a pair of groups acting on each other.
    Tensor(PairArgs),
    /// Compute nu(G), its tensor square, Delta(G) and mu(G).
    Nu(GroupArgs),
    /// Check that two actions are compatible.
    Compat(PairArgs),
    /// Run the verification suite and print one JSON report per line.
    Verify(VerifyArgs),
    /// Integer and abelian-group utilities.
    #[command(subcommand)]
    Abelian(AbelianCommand),
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// Coset table capacity for enumerations.
    #[arg(long, env = "ETA_MAX_COSETS", default_value_t = tensorial_core::fpgroup::DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    /// Also print a human-readable table to standard error.
    #[arg(long)]
    pretty: bool,
    /// Include wall-clock timings (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct PairSource {
    /// Two builtin group names, e.g. `--builtin D8 C2`.
    #[arg(
        long,
        num_args = 2,
        value_names = ["G", "H"],
        conflicts_with_all = ["pair", "incompatible_example"],
        required_unless_present_any = ["pair", "incompatible_example"]
    )]
    builtin: Option<Vec<String>>,
    /// Action-pair file (JSON).
    #[arg(long, conflicts_with = "incompatible_example")]
    pair: Option<PathBuf>,
    /// The builtin incompatible pair: S3 acted on by C2 through conjugation
    /// by a transposition, S3 acting trivially on C2.
    #[arg(long)]
    incompatible_example: bool,
    /// With `--builtin`: both groups act trivially.
    #[arg(long, conflicts_with = "conjugation")]
    trivial_actions: bool,
    /// With `--builtin`: both groups act by conjugation (needs G = H).
    #[arg(long)]
    conjugation: bool,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[command(flatten)]
    source: PairSource,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct GroupSource {
    /// Builtin group name, e.g. `D8`, `Q8`, `C2xC4`.
    #[arg(long, conflicts_with = "group", required_unless_present = "group")]
    builtin: Option<String>,
    /// Group file: JSON group spec or presentation text `<a, b | ...>`.
    #[arg(long)]
    group: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[command(flatten)]
    source: GroupSource,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Only run these claims (repeatable).
    #[arg(long, value_parser = parse_claim)]
    filter: Vec<Claim>,
    /// Corpus file (JSON) to use instead of the builtin corpus.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Subcommand, Debug)]
enum AbelianCommand {
    /// Smith normal form of an integer matrix given as JSON rows.
    Snf { matrix: String },
    /// Z-tensor product of two abelian groups given as JSON lists of cyclic orders.
    Tensor { a: String, b: String },
    /// Closed formula for Delta of an abelian group given by cyclic orders.
    Delta { a: String },
    /// Invariants of the abelianization of a group.
    Invariants(GroupArgs),
}

fn parse_claim(s: &str) -> Result<Claim, String> {
    Claim::from_id(s).ok_or_else(|| {
        let ids: Vec<&str> = Claim::ALL.iter().map(|c| c.id()).collect();
        format!("unknown claim {s:?}; known: {}", ids.join(", "))
    })
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    InvalidAction(String),
    #[error("{0}")]
    Incompatible(String),
    #[error("{0}")]
    Capacity(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Other(_) => 1,
            CliError::Parse(_) => 2,
            CliError::InvalidAction(_) => 3,
            CliError::Incompatible(_) => 4,
            CliError::Capacity(_) => 5,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match &e {
            _ if e.is_invalid_action() => CliError::InvalidAction(e.to_string()),
            InputError::Group(g) => CliError::from(g.clone()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Enumeration(EnumError::CapacityExceeded { .. }) => CliError::Capacity(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<EtaError> for CliError {
    fn from(e: EtaError) -> Self {
        match e {
            EtaError::Incompatible { .. } => CliError::Incompatible(e.to_string()),
            _ if e.is_capacity() => CliError::Capacity(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn resolve_group(source: &GroupSource, max_cosets: usize) -> Result<(GroupSpec, FiniteGroup), CliError> {
    match (&source.builtin, &source.group) {
        (Some(name), _) => {
            let spec = GroupSpec::builtin(name);
            let group = spec.resolve(max_cosets)?;
            Ok((spec, group))
        }
        (None, Some(path)) => Ok(parse_group_text(&read(path)?, max_cosets)?),
        (None, None) => unreachable!("clap requires a source"),
    }
}

fn resolve_pair(source: &PairSource, max_cosets: usize) -> Result<(PairSpec, ActionPair), CliError> {
    if source.incompatible_example {
        let pair = incompatible_example();
        let spec = PairSpec {
            g: GroupSpec::builtin("S3"),
            h: GroupSpec::builtin("C2"),
            action_on_g: ActionSpec::Table(pair.action_on_g().rows().to_vec()),
            action_on_h: ActionSpec::Named("trivial".into()),
        };
        return Ok((spec, pair));
    }
    let spec = match (&source.builtin, &source.pair) {
        (Some(names), _) => {
            let action = match (source.trivial_actions, source.conjugation) {
                (true, false) => "trivial",
                (false, true) => "conjugation",
                _ => return Err(CliError::Parse("--builtin needs --trivial-actions or --conjugation".into())),
            };
            let named = ActionSpec::Named(action.to_string());
            PairSpec {
                g: GroupSpec::builtin(&names[0]),
                h: GroupSpec::builtin(&names[1]),
                action_on_g: named.clone(),
                action_on_h: named,
            }
        }
        (None, Some(path)) => parse_pair_text(&read(path)?)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let pair = spec.resolve(max_cosets)?;
    Ok((spec, pair))
}

fn parse_orders(text: &str) -> Result<AbelianInvariants, CliError> {
    let orders: Vec<u64> =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("expected a JSON list of cyclic orders: {e}")))?;
    if orders.contains(&0) {
        return Err(CliError::Parse("cyclic orders must be positive".into()));
    }
    Ok(AbelianInvariants::from_cyclic_orders(&orders))
}

fn emit(value: &impl serde::Serialize) {
    let line = serde_json::to_string(value).expect("reports serialize");
    println!("{line}");
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Tensor(args) => {
            let start = Instant::now();
            let (spec, pair) = resolve_pair(&args.source, args.common.max_cosets)?;
            let mut r = report::tensor(&spec, &pair, args.common.max_cosets)?;
            if args.common.timing {
                r.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            if args.common.pretty {
                pretty::tensor(&r);
            }
            emit(&r);
        }
        Command::Nu(args) => {
            let start = Instant::now();
            let (spec, group) = resolve_group(&args.source, args.common.max_cosets)?;
            let mut r = report::nu(&spec, &group, args.common.max_cosets)?;
            if args.common.timing {
                r.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            if args.common.pretty {
                pretty::nu(&r);
            }
            emit(&r);
            if !r.checks.all_passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Compat(args) => {
            let (spec, pair) = resolve_pair(&args.source, args.common.max_cosets)?;
            let r = report::compat(&spec, &pair);
            if args.common.pretty {
                pretty::compat(&r);
            }
            emit(&r);
            if !r.compatible {
                return Ok(ExitCode::from(CliError::Incompatible(String::new()).exit_code()));
            }
        }
        Command::Verify(args) => {
            let corpus = match &args.corpus {
                Some(path) => {
                    let file = parse_corpus_text(&read(path)?)?;
                    Corpus::from_file(&file, args.common.max_cosets)
                        .map_err(|(name, e)| match CliError::from(e) {
                            CliError::Parse(m) => CliError::Parse(format!("{name}: {m}")),
                            CliError::InvalidAction(m) => CliError::InvalidAction(format!("{name}: {m}")),
                            other => other,
                        })?
                }
                None => Corpus::builtin(),
            };
            let options =
                VerifyOptions { max_cosets: args.common.max_cosets, filter: args.filter, timing: args.common.timing };
            let reports = run_corpus(&corpus, &options);
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for r in &reports {
                writeln!(out, "{}", r.to_json_line()).map_err(|e| CliError::Other(e.to_string()))?;
            }
            let summary = Summary::of(&reports);
            if args.common.pretty {
                pretty::verify(&reports, &summary);
            }
            if summary.fail > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Abelian(cmd) => match cmd {
            AbelianCommand::Snf { matrix } => {
                let rows: Vec<Vec<i64>> = serde_json::from_str(&matrix)
                    .map_err(|e| CliError::Parse(format!("expected a JSON matrix of integers: {e}")))?;
                if rows.iter().any(|r| r.len() != rows.first().map_or(0, Vec::len)) {
                    return Err(CliError::Parse("matrix rows differ in length".into()));
                }
                emit(&report::snf(&IntMatrix::from_rows(&rows)));
            }
            AbelianCommand::Tensor { a, b } => emit(&report::z_tensor(&parse_orders(&a)?, &parse_orders(&b)?)),
            AbelianCommand::Delta { a } => emit(&report::delta(&parse_orders(&a)?)),
            AbelianCommand::Invariants(args) => {
                let (spec, group) = resolve_group(&args.source, args.common.max_cosets)?;
                emit(&report::invariants(&spec, &group));
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
