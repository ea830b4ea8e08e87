mod output;

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use splinedim::bounds::{lower_bound_hom, upper_bound_hom, SplineSpace};
use splinedim::mesh::{validate_disk, MeshData, Triangulation};
use splinedim::oracle;
use splinedim::ordering::{
    exactness_certificate, find_schumaker_ordering, lemma_order, minimize_upper_bound,
    tilde_slope_counts, SchumakerSearch, SearchBudget,
};
use splinedim::refine::{ps12_split, ps6_peeling_order, ps6_split, BoundaryPoints, InteriorPoints};
use splinedim::report::{self, OrderStrategy, ReportError, ReportOptions};

use output::{Format, Table};

const EXIT_VALIDATION: u8 = 1;
const EXIT_INCONSISTENT: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "splinedim",
    version,
    about = "Dimension bounds for bivariate spline spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct Common {
    /// Mesh file (JSON).
    mesh: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug, Clone)]
struct Degrees {
    /// Smoothness order.
    #[arg(long = "r")]
    r: u32,
    /// Degree or inclusive range `A..B`.
    #[arg(long = "k", value_parser = parse_degrees)]
    k: RangeInclusive<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a mesh is a triangulated disk.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Face counts and per-vertex slope counts.
    Stats {
        #[command(flatten)]
        common: Common,
    },
    /// Lower and upper bounds for each degree in a range.
    Bounds {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degrees: Degrees,
        #[arg(long, value_enum, default_value_t = OrderArg::Exhaustive)]
        order: OrderArg,
        /// Also compute the exact dimension.
        #[arg(long)]
        oracle: bool,
        /// JSON list of interior vertices (or an object with an `ordering` field).
        #[arg(long)]
        ordering_file: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact dimension and homology defect for each degree in a range.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        degrees: Degrees,
    },
    /// Test whether an ordering makes the upper bound exact.
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long = "r")]
        r: u32,
        #[arg(long)]
        ordering_file: Option<PathBuf>,
    },
    /// Powell-Sabin refinement.
    Refine {
        /// Mesh file (JSON).
        mesh: PathBuf,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Six-split interior points.
        #[arg(long, value_enum, default_value_t = InteriorArg::Auto)]
        interior: InteriorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a vertex ordering.
    Order {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long = "r", default_value_t = 1)]
        r: u32,
        #[arg(long = "k", default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OrderArg {
    Exhaustive,
    Greedy,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SchemeArg {
    Ps6,
    Ps12,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum InteriorArg {
    Auto,
    Centroid,
    Incenter,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum StrategyArg {
    Exhaustive,
    Greedy,
    SchumakerSearch,
}

fn parse_degrees(text: &str) -> Result<RangeInclusive<u32>, String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| format!("`{s}` is not a nonnegative integer"))
    };
    let range = match text.split_once("..") {
        Some((a, b)) => parse(a)?..=parse(b.trim_start_matches('='))?,
        None => {
            let k = parse(text)?;
            k..=k
        }
    };
    if range.start() > range.end() {
        return Err(format!("empty degree range {text}"));
    }
    Ok(range)
}

/// An error with the exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn validation(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: EXIT_VALIDATION,
            error: error.into(),
        }
    }

    fn usage(message: String) -> Self {
        Self {
            code: EXIT_USAGE,
            error: anyhow!(message),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Self {
            code: EXIT_VALIDATION,
            error,
        }
    }
}

impl From<ReportError> for Failure {
    fn from(error: ReportError) -> Self {
        let code = match error {
            ReportError::Inconsistent { .. } => EXIT_INCONSISTENT,
            ReportError::Bounds(splinedim::bounds::BoundsError::SmoothnessExceedsDegree {
                ..
            }) => EXIT_USAGE,
            _ => EXIT_VALIDATION,
        };
        Self {
            code,
            error: error.into(),
        }
    }
}

type Outcome = Result<(), Failure>;

#[derive(Deserialize)]
struct OrderingDoc {
    #[serde(default)]
    ordering: Option<Vec<usize>>,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_mesh(path: &Path) -> Result<(Triangulation, Option<Vec<usize>>), Failure> {
    let text = read(path)?;
    let tri = Triangulation::new(MeshData::from_json(&text).map_err(Failure::validation)?)
        .map_err(Failure::validation)?;
    let embedded = serde_json::from_str::<OrderingDoc>(&text)
        .ok()
        .and_then(|d| d.ordering);
    Ok((tri, embedded))
}

fn load_ordering(path: &Path) -> Result<Vec<usize>, Failure> {
    let text = read(path)?;
    if let Ok(list) = serde_json::from_str::<Vec<usize>>(&text) {
        return Ok(list);
    }
    serde_json::from_str::<OrderingDoc>(&text)
        .ok()
        .and_then(|d| d.ordering)
        .ok_or_else(|| {
            Failure::validation(anyhow!(
                "{}: expected a JSON list of vertex indices or an object with an `ordering` field",
                path.display()
            ))
        })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::from),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .context("cannot write to stdout")
                .map_err(Failure::from)
        }
    }
}

fn space(r: u32, k: u32) -> Result<SplineSpace, Failure> {
    SplineSpace::new(r, k).map_err(|e| Failure::usage(e.to_string()))
}

fn check_degrees(degrees: &Degrees) -> Result<(), Failure> {
    space(degrees.r, *degrees.k.start()).map(|_| ())
}

fn validate(common: &Common) -> Outcome {
    let text = read(&common.mesh)?;
    let data = MeshData::from_json(&text).map_err(Failure::validation)?;
    let report = validate_disk(&data);
    let rendered = output::validation(&report, common.format)?;
    emit(common.out.as_deref(), &rendered)?;
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure::validation(anyhow!(
            "mesh is not a valid triangulated disk"
        )))
    }
}

fn stats(common: &Common) -> Outcome {
    let (tri, _) = load_mesh(&common.mesh)?;
    let rendered = output::stats(&tri, common.format)?;
    emit(common.out.as_deref(), &rendered)
}

fn bounds(
    common: &Common,
    degrees: &Degrees,
    order: OrderArg,
    with_oracle: bool,
    ordering_file: Option<&Path>,
    seed: u64,
) -> Outcome {
    check_degrees(degrees)?;
    let (tri, _) = load_mesh(&common.mesh)?;
    let ordering = ordering_file.map(load_ordering).transpose()?;
    let options = ReportOptions {
        strategy: match order {
            OrderArg::Exhaustive => OrderStrategy::Exhaustive,
            OrderArg::Greedy => OrderStrategy::Greedy,
        },
        budget: SearchBudget {
            seed,
            restarts: 4,
            ..SearchBudget::default()
        },
        oracle: with_oracle,
        ordering,
    };
    let reports = report::sweep(&tri, degrees.r, degrees.k.clone(), &options)?;
    let rendered = output::reports(&reports, common.format)?;
    emit(common.out.as_deref(), &rendered)
}

fn oracle_cmd(common: &Common, degrees: &Degrees) -> Outcome {
    check_degrees(degrees)?;
    let (tri, _) = load_mesh(&common.mesh)?;
    let mut table = Table::new(&["r", "k", "dimension", "lbh", "defect"]);
    for k in degrees.k.clone() {
        let space = space(degrees.r, k)?;
        let dim = oracle::spline_dimension(&tri, space) as i64;
        let lbh = lower_bound_hom(&tri, space);
        if dim < lbh {
            return Err(Failure {
                code: EXIT_INCONSISTENT,
                error: anyhow!(
                    "internal inconsistency at r = {}, k = {k}: dimension {dim} below LBH {lbh}",
                    degrees.r
                ),
            });
        }
        table.row(vec![
            degrees.r.to_string(),
            k.to_string(),
            dim.to_string(),
            lbh.to_string(),
            (dim - lbh).to_string(),
        ]);
    }
    emit(common.out.as_deref(), &table.render(common.format)?)
}

fn certify(common: &Common, r: u32, ordering_file: Option<&Path>) -> Outcome {
    let (tri, embedded) = load_mesh(&common.mesh)?;
    let (ordering, source) = match (ordering_file.map(load_ordering).transpose()?, embedded) {
        (Some(order), _) => (order, "ordering file"),
        (None, Some(order)) => (order, "mesh file"),
        (None, None) => {
            let probe = space(r, r + 1)?;
            let best = minimize_upper_bound(&tri, probe, SearchBudget::default()).ordering;
            let lemma = lemma_order(&tri).map_err(|e| Failure {
                code: EXIT_INCONSISTENT,
                error: e.into(),
            })?;
            let chosen = [best, lemma]
                .into_iter()
                .find(|o| exactness_certificate(&tri, o, r).is_ok_and(|c| c.holds))
                .unwrap_or_else(|| tri.interior_vertices().to_vec());
            (chosen, "search")
        }
    };
    let stats = tilde_slope_counts(&tri, &ordering).map_err(Failure::validation)?;
    let certificate = exactness_certificate(&tri, &ordering, r).map_err(Failure::validation)?;
    if certificate.holds {
        for k in r..=r + 8 {
            let space = space(r, k)?;
            let (ubh, lbh) = (
                upper_bound_hom(&tri, &ordering, space).map_err(Failure::validation)?,
                lower_bound_hom(&tri, space),
            );
            if ubh != lbh {
                return Err(Failure {
                    code: EXIT_INCONSISTENT,
                    error: anyhow!(
                        "internal inconsistency: certificate holds but UBH {ubh} != LBH {lbh} at k = {k}"
                    ),
                });
            }
        }
    }
    let rendered = output::certificate(r, &stats, &certificate, source, common.format)?;
    emit(common.out.as_deref(), &rendered)
}

fn refine(mesh: &Path, scheme: SchemeArg, interior: InteriorArg, out: Option<&Path>) -> Outcome {
    let (parent, _) = load_mesh(mesh)?;
    let document = match scheme {
        SchemeArg::Ps12 => ps12_split(&parent).to_document(None),
        SchemeArg::Ps6 => {
            let strategy = match interior {
                InteriorArg::Auto => InteriorPoints::Auto,
                InteriorArg::Centroid => InteriorPoints::Centroid,
                InteriorArg::Incenter => InteriorPoints::Incenter,
            };
            let record = ps6_split(&parent, &strategy, &BoundaryPoints::Midpoint)
                .map_err(Failure::validation)?;
            let order = ps6_peeling_order(&record);
            record.to_document(Some(order))
        }
    };
    let mut text = serde_json::to_string_pretty(&document).context("serializing mesh")?;
    text.push('\n');
    emit(out, &text)
}

fn order(common: &Common, strategy: StrategyArg, r: u32, k: u32, seed: u64) -> Outcome {
    let space = space(r, k)?;
    let (tri, _) = load_mesh(&common.mesh)?;
    let budget = SearchBudget {
        seed,
        restarts: 4,
        ..SearchBudget::default()
    };
    let (ordering, method) = match strategy {
        StrategyArg::Exhaustive => (
            Some(minimize_upper_bound(&tri, space, budget).ordering),
            "exhaustive",
        ),
        StrategyArg::Greedy => {
            let greedy = SearchBudget {
                exhaustive_limit: 0,
                ..budget
            };
            (
                Some(minimize_upper_bound(&tri, space, greedy).ordering),
                "greedy",
            )
        }
        StrategyArg::SchumakerSearch => match find_schumaker_ordering(&tri) {
            SchumakerSearch::Found(order) => (Some(order), "schumaker-search"),
            SchumakerSearch::NoneExists => (None, "no Schumaker-valid ordering exists"),
            SchumakerSearch::BudgetExhausted => {
                (None, "search budget exhausted; existence unknown")
            }
        },
    };
    let rendered = output::ordering(&tri, space, ordering.as_deref(), method, common.format)?;
    emit(common.out.as_deref(), &rendered)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { common } => validate(&common),
        Command::Stats { common } => stats(&common),
        Command::Bounds {
            common,
            degrees,
            order,
            oracle,
            ordering_file,
            seed,
        } => bounds(
            &common,
            &degrees,
            order,
            oracle,
            ordering_file.as_deref(),
            seed,
        ),
        Command::Oracle { common, degrees } => oracle_cmd(&common, &degrees),
        Command::Certify {
            common,
            r,
            ordering_file,
        } => certify(&common, r, ordering_file.as_deref()),
        Command::Refine {
            mesh,
            scheme,
            interior,
            out,
        } => refine(&mesh, scheme, interior, out.as_deref()),
        Command::Order {
            common,
            strategy,
            r,
            k,
            seed,
        } => order(&common, strategy, r, k, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
