//! Command-line front end: reads a group description, closes the group and
//! prints Molien coefficients, invariant bases or a three-way cross-check.
//!
//! Exit codes: 0 success, 1 input error, 2 verification mismatch, 3 closure
//! overflow, 4 internal consistency error. Errors go to stderr as a single
//! line starting with `error:<kind>:`.

pub mod input;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use molien::{
    close_group, cross_check, from_permutations, invariant_basis, invariant_dimension,
    molien_series, parse_cycles, reynolds_matrix, Error, FiniteMatrixGroup, Scalar, SquareMatrix,
    DEFAULT_MAX_ORDER, DEFAULT_TOLERANCE,
};
use thiserror::Error as ThisError;

use crate::input::{Backend, GroupSpecFile};
use crate::report::{DegreeRow, InvariantsSection, Report, View};

#[derive(Debug, Parser)]
#[command(
    name = "molien",
    version,
    about = "Molien series and polynomial invariants of finite matrix groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Float-backend comparison tolerance (overrides the file)
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,

    /// Largest group order explored during closure (overrides the file)
    #[arg(long = "max-order", global = true)]
    pub max_order: Option<usize>,

    /// Permutation generator in cycle notation, e.g. "(1 2)(3)"; repeatable.
    /// Replaces the input file.
    #[arg(long = "perm", global = true)]
    pub perms: Vec<String>,

    /// Dimension for --perm generators (default: largest moved or listed point)
    #[arg(long, global = true)]
    pub dimension: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Molien coefficients a_0..a_D from the generating function
    Series(DegreeArgs),
    /// a_d and a basis of the degree-d invariants
    Invariants(DegreeArgs),
    /// Compare series, Reynolds trace and basis rank for degrees 0..=D
    Verify(DegreeArgs),
}

impl Command {
    pub fn view(&self) -> View {
        match self {
            Command::Series(_) => View::Series,
            Command::Invariants(_) => View::Invariants,
            Command::Verify(_) => View::Verify,
        }
    }

    pub fn args(&self) -> &DegreeArgs {
        match self {
            Command::Series(a) | Command::Invariants(a) | Command::Verify(a) => a,
        }
    }
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    /// Highest degree (series, verify) or the single degree (invariants)
    #[arg(long, short = 'd')]
    pub degree: usize,

    /// Group description (JSON)
    pub file: Option<PathBuf>,
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid group file: {0}")]
    Json(serde_json::Error),
    #[error("generator {generator}, row {row}, column {col}: {err}")]
    Entry {
        generator: usize,
        row: usize,
        col: usize,
        err: Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("methods disagree at degree(s) {0:?}")]
    Mismatch(Vec<usize>),
}

impl CliError {
    fn core(&self) -> Option<&Error> {
        match self {
            CliError::Core(e) | CliError::Entry { err: e, .. } => Some(e),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Json(_) => "parse",
            CliError::Mismatch(_) => "mismatch",
            CliError::Core(e) | CliError::Entry { err: e, .. } => match e {
                Error::Shape { .. } => "validation",
                other => other.kind(),
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.core() {
            Some(Error::Overflow { .. }) => 3,
            Some(Error::Consistency { .. } | Error::Arithmetic(_)) => 4,
            _ if matches!(self, CliError::Mismatch(_)) => 2,
            _ => 1,
        }
    }
}

/// What a successful or mismatching run prints, plus its exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub error: Option<CliError>,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let source = load_source(cli)?;
    match source.backend {
        Backend::Exact => {
            let gens = match &source.spec {
                Some(spec) => spec.exact_generators()?,
                None => source.perm_generators()?,
            };
            run_with(cli, &gens, source.max_order, 0.0)
        }
        Backend::Float => {
            let gens = match &source.spec {
                Some(spec) => spec.float_generators()?,
                None => source.perm_generators()?,
            };
            run_with(cli, &gens, source.max_order, source.tolerance)
        }
    }
}

struct Source<'a> {
    spec: Option<GroupSpecFile>,
    perms: &'a [String],
    points: Option<usize>,
    backend: Backend,
    max_order: usize,
    tolerance: f64,
}

impl Source<'_> {
    fn perm_generators<S: Scalar>(&self) -> Result<Vec<SquareMatrix<S>>, CliError> {
        let parsed = self
            .perms
            .iter()
            .map(|p| parse_cycles(p, None))
            .collect::<Result<Vec<_>, _>>()?;
        let n = self
            .points
            .unwrap_or_else(|| parsed.iter().map(Vec::len).max().unwrap_or(0));
        if n == 0 {
            return Err(Error::Validation("--perm needs at least one point".into()).into());
        }
        let images = self
            .perms
            .iter()
            .map(|p| parse_cycles(p, Some(n)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(from_permutations(&images)?)
    }
}

fn load_source(cli: &Cli) -> Result<Source<'_>, CliError> {
    let args = cli.command.args();
    let g = &cli.global;
    let spec = match (&args.file, g.perms.is_empty()) {
        (Some(_), false) => {
            return Err(CliError::Usage(
                "give either a group file or --perm, not both".into(),
            ))
        }
        (None, true) => {
            return Err(CliError::Usage(
                "a group file or at least one --perm is required".into(),
            ))
        }
        (Some(path), true) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Some(GroupSpecFile::from_json(&text)?)
        }
        (None, false) => None,
    };
    let backend = spec.as_ref().map_or(Backend::Exact, |s| s.backend);
    let max_order = g
        .max_order
        .or(spec.as_ref().and_then(|s| s.max_group_order))
        .unwrap_or(DEFAULT_MAX_ORDER);
    let tolerance = g
        .tolerance
        .or(spec.as_ref().and_then(|s| s.tolerance))
        .unwrap_or(DEFAULT_TOLERANCE);
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(Error::Validation(format!(
            "tolerance must be a nonnegative number, got {tolerance}"
        ))
        .into());
    }
    if max_order == 0 {
        return Err(Error::Validation("max order must be positive".into()).into());
    }
    Ok(Source {
        spec,
        perms: &g.perms,
        points: g.dimension,
        backend,
        max_order,
        tolerance,
    })
}

fn run_with<S: Scalar>(
    cli: &Cli,
    generators: &[SquareMatrix<S>],
    max_order: usize,
    tolerance: f64,
) -> Result<Outcome, CliError> {
    let group = close_group(generators, max_order, tolerance)?;
    let (report, error) = match &cli.command {
        Command::Series(a) => (series_report(&group, a.degree)?, None),
        Command::Invariants(a) => invariants_report(&group, a.degree)?,
        Command::Verify(a) => verify_report(&group, a.degree)?,
    };
    let stdout = match cli.global.format {
        Format::Text => report.to_text(cli.command.view()),
        Format::Json => report.to_json(),
    };
    Ok(Outcome { stdout, error })
}

fn series_report<S: Scalar>(
    group: &FiniteMatrixGroup<S>,
    degree: usize,
) -> Result<Report, CliError> {
    let r = molien_series(group, degree)?;
    let degrees = r
        .series
        .iter()
        .enumerate()
        .map(|(d, &a)| DegreeRow {
            d,
            series: Some(a),
            trace: None,
            rank: None,
            agree: true,
        })
        .collect();
    Ok(Report {
        group_order: group.order(),
        degrees,
        invariants: None,
    })
}

fn invariants_report<S: Scalar>(
    group: &FiniteMatrixGroup<S>,
    degree: usize,
) -> Result<(Report, Option<CliError>), CliError> {
    let d = u32::try_from(degree)
        .map_err(|_| Error::Validation(format!("degree {degree} is too large")))?;
    let reynolds = reynolds_matrix(group, d);
    let dimension = invariant_dimension(&reynolds)?;
    let basis = invariant_basis(group, d)?;
    let rank = basis.len() as u64;
    let agree = rank == dimension;
    let report = Report {
        group_order: group.order(),
        degrees: vec![DegreeRow {
            d: degree,
            series: None,
            trace: Some(dimension),
            rank: Some(rank),
            agree,
        }],
        invariants: Some(InvariantsSection {
            d: degree,
            dimension,
            basis: basis.polynomials.iter().map(ToString::to_string).collect(),
        }),
    };
    Ok((report, (!agree).then(|| CliError::Mismatch(vec![degree]))))
}

fn verify_report<S: Scalar>(
    group: &FiniteMatrixGroup<S>,
    degree: usize,
) -> Result<(Report, Option<CliError>), CliError> {
    let r = cross_check(group, degree)?;
    let trace = r.trace.as_deref().unwrap_or_default();
    let rank = r.rank.as_deref().unwrap_or_default();
    let degrees = (0..=degree)
        .map(|d| DegreeRow {
            d,
            series: Some(r.series[d]),
            trace: trace.get(d).copied(),
            rank: rank.get(d).copied(),
            agree: r.agreement[d],
        })
        .collect();
    let bad: Vec<usize> = (0..=degree).filter(|&d| !r.agreement[d]).collect();
    let report = Report {
        group_order: group.order(),
        degrees,
        invariants: None,
    };
    Ok((report, (!bad.is_empty()).then_some(CliError::Mismatch(bad))))
}
