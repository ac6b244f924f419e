//! `scl-lab`: command-line access to `scl-core`.
//!
//! Every computation prints one JSON record per line (or a plain table with
//! `--table`). Exit codes: 0 success, 1 internal failure or failed audit
//! check, 2 invalid input, 3 inconclusive within the search budget.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

pub mod audit;
mod free;
mod geometry;
pub mod output;
mod sol;

pub use output::OutputRecord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "SCL_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "scl-lab", version, about = "Bounds on commutator length and scl, hyperbolic estimates and Sol certificates")]
pub struct Cli {
    /// Human-readable table instead of JSON lines.
    #[arg(long, global = true)]
    pub table: bool,
    /// JSON file with Margulis constants and search budgets.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Seed for randomized scans.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a word and report its basic invariants.
    Word(WordArgs),
    /// Evaluate a Brooks counting quasimorphism.
    Brooks(BrooksArgs),
    /// Largest observed defect of a Brooks quasimorphism.
    Defect(DefectArgs),
    /// Two-sided scl bounds with certificates.
    Scl(SclArgs),
    /// Commutator length bounds.
    Cl(ClArgs),
    /// Rotation number of a projective circle map.
    Rot(RotArgs),
    /// Tube quasimorphism value and the scl lower bound it gives.
    Tube(TubeArgs),
    /// Least core length for a tube of given radius.
    Hk(HkArgs),
    /// Core length and scl bounds after Dehn filling.
    SurgeryA(SurgeryAArgs),
    /// Genus lower bound from a short meridian.
    SurgeryB(SurgeryBArgs),
    /// Neumann-Zagier core length estimate.
    Nz(NzArgs),
    /// Length gap bound and optimal epsilon.
    Gap(GapArgs),
    /// Arithmetic and certificates in a Sol lattice.
    #[command(subcommand)]
    Sol(SolCommand),
    /// Run the built-in consistency checks.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
pub struct WordArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub power: Option<i64>,
}

#[derive(Debug, Args)]
pub struct BrooksArgs {
    /// Counted word, length at least 2.
    #[arg(long)]
    pub pattern: String,
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Also report `phi(a^n)/n` with its error bound.
    #[arg(long)]
    pub n: Option<i64>,
}

#[derive(Debug, Args)]
pub struct DefectArgs {
    #[arg(long)]
    pub pattern: String,
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    #[arg(long, default_value_t = 4)]
    pub max_len: usize,
    /// Random pairs drawn when the exhaustive scan is too large.
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    /// Scan the homogenization instead (certified defect 6).
    #[arg(long)]
    pub homogenized: bool,
}

#[derive(Debug, Args)]
pub struct SclArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    #[arg(long)]
    pub n_max: Option<u32>,
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long)]
    pub max_genus: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ClArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long)]
    pub max_genus: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RotArgs {
    /// Four comma-separated reals, row-major, determinant 1.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "rotation", required_unless_present = "rotation")]
    pub matrix: Option<String>,
    /// Rigid rotation by this fraction of a turn.
    #[arg(long, allow_hyphen_values = true)]
    pub rotation: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub branch: i64,
    #[arg(long, default_value_t = 300)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct TubeArgs {
    #[arg(long)]
    pub length: f64,
    #[arg(long)]
    pub radius: f64,
}

#[derive(Debug, Args)]
pub struct HkArgs {
    #[arg(long)]
    pub radius: f64,
}

#[derive(Debug, Args)]
pub struct SurgeryAArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub chi: i64,
    #[arg(long, default_value_t = 1)]
    pub multiplicity: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub p: i64,
    #[arg(long)]
    pub radius: f64,
    /// Core length to test against the scl sandwich.
    #[arg(long)]
    pub core_length: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenusVariantArg {
    Tube,
    Boroczky,
}

#[derive(Debug, Args)]
pub struct SurgeryBArgs {
    #[arg(long)]
    pub meridian_length: f64,
    #[arg(long, value_enum, default_value_t = GenusVariantArg::Tube)]
    pub variant: GenusVariantArg,
}

#[derive(Debug, Args)]
pub struct NzArgs {
    /// Meridian as `re,im` on an area-one cusp.
    #[arg(long, allow_hyphen_values = true)]
    pub meridian: String,
    /// Longitude as `re,im`; defaults to the one given by `--shear`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "shear")]
    pub longitude: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub shear: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub q: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GapVariantArg {
    Uniform,
    FixedManifold,
}

#[derive(Debug, Args)]
pub struct GapArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub g: u64,
    /// Defaults to the optimal epsilon under the available caps.
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, value_enum, default_value_t = GapVariantArg::Uniform)]
    pub variant: GapVariantArg,
    /// Upper limit for the optimal epsilon search.
    #[arg(long)]
    pub cap: Option<f64>,
    #[arg(long)]
    pub margulis_n: Option<f64>,
    #[arg(long)]
    pub margulis_2: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum SolCommand {
    /// Product and inverses of two elements `x,y,t`.
    Mul(SolMulArgs),
    /// Whether a fiber vector lies in the commutator subgroup.
    Member(SolVectorArgs),
    /// Single commutator certificate for a fiber vector (or its power).
    Cert(SolCertArgs),
    /// Recursive logarithmic decomposition.
    Decompose(SolDecomposeArgs),
    /// scl of a fiber vector.
    Scl(SolVectorArgs),
}

#[derive(Debug, Args)]
pub struct SolMulArgs {
    /// Four comma-separated integers, row-major.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Debug, Args)]
pub struct SolVectorArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    #[arg(long, allow_hyphen_values = true)]
    pub vector: String,
}

#[derive(Debug, Args)]
pub struct SolCertArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    #[arg(long, allow_hyphen_values = true)]
    pub vector: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub power: i64,
}

#[derive(Debug, Args)]
pub struct SolDecomposeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    #[arg(long, allow_hyphen_values = true)]
    pub vector: String,
    #[arg(long, default_value_t = 64)]
    pub max_depth: usize,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Evenly spaced radii in (2, 10].
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Explicit comma-separated radii; every one must exceed 2.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "grid_points")]
    pub grid: Option<String>,
    #[arg(long, default_value_t = 5)]
    pub brooks_len: usize,
    #[arg(long, default_value_t = 12)]
    pub oracle_len: usize,
    #[arg(long, default_value_t = 10)]
    pub cusps: usize,
}

/// Optional settings read from `--config`.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub margulis_n: Option<f64>,
    pub margulis_2: Option<f64>,
    pub n_max: Option<u32>,
    pub max_len: Option<usize>,
    pub max_genus: Option<usize>,
    pub audit_grid_points: Option<usize>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("config {}: {e}", path.display())))
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug, Default)]
pub struct Context {
    pub config: Config,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError { code: EXIT_FAILURE, message: message.into() }
    }
}

impl From<scl_core::WordError> for CliError {
    fn from(e: scl_core::WordError) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<scl_core::quasimorphism::QmError> for CliError {
    fn from(e: scl_core::quasimorphism::QmError) -> Self {
        match e {
            scl_core::quasimorphism::QmError::DefectExceeded { .. } => CliError::internal(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<scl_core::scl::SclError> for CliError {
    fn from(e: scl_core::scl::SclError) -> Self {
        use scl_core::scl::SclError::*;
        match e {
            SoundnessViolation { .. } | SearchCertificateRejected => CliError::internal(e.to_string()),
            _ => CliError::invalid(e.to_string()),
        }
    }
}

impl From<scl_core::hyperbolic::HyperbolicError> for CliError {
    fn from(e: scl_core::hyperbolic::HyperbolicError) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<scl_core::sol::SolError> for CliError {
    fn from(e: scl_core::sol::SolError) -> Self {
        CliError::invalid(e.to_string())
    }
}

impl From<scl_core::quasimorphism::RotationError> for CliError {
    fn from(e: scl_core::quasimorphism::RotationError) -> Self {
        CliError::invalid(e.to_string())
    }
}

/// `n` comma-separated values of type `T`.
pub(crate) fn parse_list<T: std::str::FromStr>(name: &str, s: &str, n: Option<usize>) -> Result<Vec<T>, CliError> {
    let mut out = Vec::new();
    for (i, part) in s.split(',').enumerate() {
        let part = part.trim();
        out.push(part.parse().map_err(|_| CliError::invalid(format!("--{name}: entry {} ({part:?}) is not a number", i + 1)))?);
    }
    if let Some(n) = n {
        if out.len() != n {
            return Err(CliError::invalid(format!("--{name}: expected {n} comma-separated values, got {}", out.len())));
        }
    }
    Ok(out)
}

/// Executes one command and returns its records; the exit code follows from
/// the flags on the records.
pub fn execute(command: &Command, ctx: &Context) -> Result<Vec<OutputRecord>, CliError> {
    match command {
        Command::Word(a) => free::word_cmd(a),
        Command::Brooks(a) => free::brooks_cmd(a),
        Command::Defect(a) => free::defect_cmd(a, ctx),
        Command::Scl(a) => free::scl_cmd(a, ctx),
        Command::Cl(a) => free::cl_cmd(a, ctx),
        Command::Rot(a) => free::rot_cmd(a),
        Command::Tube(a) => geometry::tube(a),
        Command::Hk(a) => geometry::hk(a),
        Command::SurgeryA(a) => geometry::surgery_a(a),
        Command::SurgeryB(a) => geometry::surgery_b(a),
        Command::Nz(a) => geometry::nz(a),
        Command::Gap(a) => geometry::gap(a, ctx),
        Command::Sol(c) => sol::run(c),
        Command::Audit(a) => audit::run(a, ctx),
    }
}

fn exit_code(records: &[OutputRecord]) -> i32 {
    let has = |f: &str| records.iter().any(|r| r.flags.iter().any(|x| x == f));
    if has(audit::FAILED) {
        EXIT_FAILURE
    } else if has(output::BUDGET_EXHAUSTED) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::invalid(format!("{THREADS_ENV} must be a positive integer, got {s:?}"))),
        },
    }
}

fn report_error(err: &mut dyn Write, command: &str, e: &CliError) {
    let line = serde_json::json!({"command": command, "error": e.message, "exit": e.code});
    let _ = writeln!(err, "{line}");
}

/// Parses `argv` (including the program name), runs the command and writes
/// records to `out` and errors to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INVALID
                }
            };
        }
    };
    let name = command_name(&cli.command);
    let result = (|| {
        let config = match &cli.config {
            Some(p) => Config::load(p)?,
            None => Config::default(),
        };
        let ctx = Context { config, seed: cli.seed };
        match thread_cap()? {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::internal(e.to_string()))?
                .install(|| execute(&cli.command, &ctx)),
            None => execute(&cli.command, &ctx),
        }
    })();
    match result {
        Ok(records) => {
            for r in &records {
                if r.write(out, cli.table).is_err() {
                    return EXIT_FAILURE;
                }
            }
            exit_code(&records)
        }
        Err(e) => {
            report_error(err, name, &e);
            e.code
        }
    }
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Word(_) => "word",
        Command::Brooks(_) => "brooks",
        Command::Defect(_) => "defect",
        Command::Scl(_) => "scl",
        Command::Cl(_) => "cl",
        Command::Rot(_) => "rot",
        Command::Tube(_) => "tube",
        Command::Hk(_) => "hk",
        Command::SurgeryA(_) => "surgery-a",
        Command::SurgeryB(_) => "surgery-b",
        Command::Nz(_) => "nz",
        Command::Gap(_) => "gap",
        Command::Sol(SolCommand::Mul(_)) => "sol mul",
        Command::Sol(SolCommand::Member(_)) => "sol member",
        Command::Sol(SolCommand::Cert(_)) => "sol cert",
        Command::Sol(SolCommand::Decompose(_)) => "sol decompose",
        Command::Sol(SolCommand::Scl(_)) => "sol scl",
        Command::Audit(_) => "audit",
    }
}
