//! Command-line definition and the command runner.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use circsym_core::circulant::{connected_specs, is_edge_transitive, normalize};
use circsym_core::group::{group_generators, verify_group};
use circsym_core::search::SearchBudget;
use circsym_core::subdivided::subdivided_specs;
use circsym_core::symparams::{verify_appendix, verify_spec, AppendixCheck, SpecVerification};
use circsym_core::zmod::{special_conditions, symbol_stabilizer};
use circsym_core::{closed_form_params, group_order, Arc, Budget, CirculantSpec, Error, GraphSpec, SubdividedSpec};

use crate::dto::{components, AppendixDto, GraphDto, GroupDto, InfoDto, ReportDto, VerifyDto};
use crate::{render, table3};

#[derive(Debug, Parser)]
#[command(name = "circsym", version, about = "Symmetry parameters of circulants C_n(i,j) and their subdivisions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Suppress progress messages on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalization, connectivity, twins, H and H', group structure.
    Info {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Closed-form det, dist and cost with witnesses.
    Params {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Confirm against an exhaustive search over the brute-force group.
        #[arg(long)]
        search: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Every connected spec in a range, bucketed like the summary table.
    Table {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(long)]
        search: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Closed forms against the brute-force oracle, for one spec or a range.
    Verify {
        #[command(flatten)]
        spec: OptSpecArgs,
        #[command(flatten)]
        range: OptRangeArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Reflection table and the representative-set checks.
    Appendix {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The built graph as DOT or JSON.
    Export {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Md,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArcArg {
    I,
    J,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub j: usize,
    /// Subdivide the i-arcs or the j-arcs.
    #[arg(long, value_enum)]
    pub subdivide: Option<ArcArg>,
    /// Number of subdivision vertices per arc.
    #[arg(long, requires = "subdivide")]
    pub p: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OptSpecArgs {
    #[arg(long, conflicts_with_all = ["n_min", "n_max", "p_max", "subdivided"])]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub i: Option<usize>,
    #[arg(long, requires = "n")]
    pub j: Option<usize>,
    #[arg(long, value_enum, requires = "n")]
    pub subdivide: Option<ArcArg>,
    #[arg(long, requires = "subdivide")]
    pub p: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct RangeArgs {
    #[arg(long, default_value_t = 4)]
    pub n_min: usize,
    #[arg(long)]
    pub n_max: usize,
    /// Also list subdivisions of both arcs with 1 <= p <= p-max.
    #[arg(long)]
    pub subdivided: bool,
    #[arg(long, default_value_t = 3)]
    pub p_max: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OptRangeArgs {
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub subdivided: bool,
    #[arg(long)]
    pub p_max: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Largest graph the brute-force oracle will take.
    #[arg(long, default_value_t = 60)]
    pub budget_vertices: usize,
    /// Node limit for the brute-force and search backtracking.
    #[arg(long, env = "CIRCSYM_BUDGET_NODES", default_value_t = 100_000_000)]
    pub budget_nodes: u64,
    /// Exit with status 3 when any spec is skipped for budget reasons.
    #[arg(long)]
    pub strict: bool,
}

impl BudgetArgs {
    fn brute(&self) -> Budget {
        Budget { max_vertices: self.budget_vertices, max_nodes: self.budget_nodes }
    }

    fn search(&self) -> SearchBudget {
        SearchBudget { max_nodes: self.budget_nodes }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Usage = 1,
    Mismatch = 2,
    Budget = 3,
}

#[derive(Debug)]
pub enum AppError {
    Usage(String),
    Spec(Error),
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Usage(m) => f.write_str(m),
            AppError::Spec(e) => e.fmt(f),
        }
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        AppError::Spec(e)
    }
}

pub struct Outcome {
    pub output: String,
    pub exit: Exit,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, exit: Exit::Success }
    }
}

type AppResult<T> = Result<T, AppError>;

fn unsupported(format: Format, command: &str) -> AppError {
    AppError::Usage(format!("--format {format:?} is not available for {command}").to_lowercase())
}

fn graph_spec(n: usize, i: usize, j: usize, arc: Option<ArcArg>, p: Option<usize>) -> AppResult<GraphSpec> {
    let base = normalize(n, i, j)?;
    Ok(match arc {
        None => GraphSpec::Base(base),
        Some(a) => {
            let arc = match a {
                ArcArg::I => Arc::I,
                ArcArg::J => Arc::J,
            };
            GraphSpec::Subdivided(SubdividedSpec::new(base, arc, p.unwrap_or(1))?)
        }
    })
}

impl SpecArgs {
    fn spec(&self) -> AppResult<GraphSpec> {
        graph_spec(self.n, self.i, self.j, self.subdivide, self.p)
    }
}

fn range_specs(n_min: usize, n_max: usize, subdivided: bool, p_max: usize) -> AppResult<Vec<GraphSpec>> {
    if n_max < n_min {
        return Err(AppError::Usage(format!("--n-max {n_max} is below --n-min {n_min}")));
    }
    let mut specs: Vec<GraphSpec> = connected_specs(n_min, n_max).map(GraphSpec::Base).collect();
    if subdivided {
        specs.extend(subdivided_specs(n_min, n_max, p_max).map(GraphSpec::Subdivided));
    }
    specs.sort();
    Ok(specs)
}

fn progress(quiet: bool, msg: &str) {
    if !quiet {
        eprintln!("{msg}");
    }
}

pub fn run(cli: &Cli) -> AppResult<Outcome> {
    match &cli.command {
        Command::Info { spec, format } => info(spec, *format),
        Command::Params { spec, format, search, budget } => params(&spec.spec()?, *format, *search, budget),
        Command::Table { range, format, search, budget } => {
            let specs = range_specs(range.n_min, range.n_max, range.subdivided, range.p_max)?;
            progress(cli.quiet, &format!("tabulating {} specs", specs.len()));
            table(&specs, *format, *search, budget)
        }
        Command::Verify { spec, range, format, budget } => {
            let specs = match (spec.n, range.n_max) {
                (Some(n), _) => {
                    let (Some(i), Some(j)) = (spec.i, spec.j) else {
                        return Err(AppError::Usage("--n needs --i and --j".into()));
                    };
                    vec![graph_spec(n, i, j, spec.subdivide, spec.p)?]
                }
                (None, Some(n_max)) => {
                    range_specs(range.n_min.unwrap_or(4), n_max, range.subdivided, range.p_max.unwrap_or(3))?
                }
                (None, None) => return Err(AppError::Usage("verify needs --n/--i/--j or --n-max".into())),
            };
            progress(cli.quiet, &format!("verifying {} specs", specs.len()));
            verify(&specs, *format, budget)
        }
        Command::Appendix { format } => appendix(*format),
        Command::Export { spec, format } => export(spec, *format),
    }
}

fn info(args: &SpecArgs, format: Format) -> AppResult<Outcome> {
    let base = normalize(args.n, args.i, args.j)?;
    let (connected, count, component) = components(&base);
    let mut dto = InfoDto {
        spec: base.to_string(),
        input: [args.n, args.i, args.j],
        normalized: [base.n(), base.i(), base.j()],
        connected,
        components: count,
        component,
        subdivision: None,
        twin_class: None,
        twin_classes: Vec::new(),
        co_twin_pairs: Vec::new(),
        h: Vec::new(),
        h_prime: Vec::new(),
        edge_transitive: None,
        special_conditions: Vec::new(),
        group: None,
    };
    if connected {
        let spec = args.spec()?;
        let twins = spec.twin_classification()?;
        let st = symbol_stabilizer(base.n(), base.i(), base.j())?;
        dto.twin_class = Some(twins.variant.as_str().to_string());
        dto.twin_classes = twins.classes;
        dto.co_twin_pairs = twins.co_twin_pairs.into_iter().map(|(a, b)| [a, b]).collect();
        dto.h = st.h;
        dto.h_prime = st.h_prime;
        dto.edge_transitive = Some(is_edge_transitive(&base));
        if !base.is_half_j() {
            dto.special_conditions = special_conditions(base.n(), base.i(), base.j())?.iter().map(|c| c.describe().to_string()).collect();
        }
        if let GraphSpec::Subdivided(_) = spec {
            dto.subdivision = Some((&spec).into());
        }
        let (tag, generators) = group_generators(&spec)?;
        dto.group = Some(GroupDto {
            structure_tag: tag.to_string(),
            order: group_order(&spec)?,
            generators: generators.iter().map(ToString::to_string).collect(),
        });
    } else if args.subdivide.is_some() {
        return Err(Error::Disconnected { n: base.n(), i: base.i(), j: base.j(), components: count }.into());
    }
    Ok(Outcome::ok(match format {
        Format::Json => render::json(&dto),
        Format::Text => info_text(&dto),
        other => return Err(unsupported(other, "info")),
    }))
}

fn info_text(d: &InfoDto) -> String {
    let mut out = String::new();
    let [n, i, j] = d.input;
    writeln!(out, "input: ({n}, {i}, {j})").unwrap();
    writeln!(out, "normalized: {}", d.spec).unwrap();
    if !d.connected {
        let comp = d.component.as_deref().unwrap_or("?");
        writeln!(out, "connected: no, {} components ≅ {comp}", d.components).unwrap();
        return out;
    }
    out.push_str("connected: yes\n");
    if let Some(s) = &d.subdivision {
        writeln!(out, "subdivision: {} ({} vertices)", s.label, s.vertices).unwrap();
    }
    writeln!(out, "twin class: {}", d.twin_class.as_deref().unwrap_or("-")).unwrap();
    if !d.twin_classes.is_empty() {
        let classes: Vec<String> = d.twin_classes.iter().map(|c| render::set(c)).collect();
        writeln!(out, "twin classes: {}", classes.join(" ")).unwrap();
    }
    if !d.co_twin_pairs.is_empty() {
        let pairs: Vec<String> = d.co_twin_pairs.iter().map(|p| render::set(p)).collect();
        writeln!(out, "co-twin pairs: {}", pairs.join(" ")).unwrap();
    }
    writeln!(out, "H = {}", render::set(&d.h)).unwrap();
    writeln!(out, "H' = {}", render::set(&d.h_prime)).unwrap();
    let et = if d.edge_transitive == Some(true) { "yes" } else { "no" };
    writeln!(out, "edge-transitive: {et}").unwrap();
    if d.normalized[2] * 2 == d.normalized[0] {
        out.push_str("special conditions: n/a (j = n/2)\n");
    } else if d.special_conditions.is_empty() {
        out.push_str("special conditions: none\n");
    } else {
        writeln!(out, "special conditions: {}", d.special_conditions.join(", ")).unwrap();
    }
    if let Some(g) = &d.group {
        writeln!(out, "structure: {}", g.structure_tag).unwrap();
        writeln!(out, "order: {}", g.order).unwrap();
        writeln!(out, "generators: {}", g.generators.join(" ")).unwrap();
    }
    out
}

/// Search-confirmed row: the search values with the brute-force order, or
/// the closed form when the oracle was skipped.
fn search_row(v: &SpecVerification) -> AppResult<ReportDto> {
    match &v.search {
        Some(found) => Ok(ReportDto::new(&v.spec, found, v.aut_order)?),
        None => Ok(ReportDto::new(&v.spec, &v.closed, group_order(&v.spec).ok())?),
    }
}

fn status_exit(mismatch: bool, skipped: bool, strict: bool) -> Exit {
    if mismatch {
        Exit::Mismatch
    } else if skipped && strict {
        Exit::Budget
    } else {
        Exit::Success
    }
}

#[derive(Serialize)]
struct ParamsDto {
    report: ReportDto,
    search: Option<ReportDto>,
    status: Option<String>,
    detail: Option<String>,
}

fn params(spec: &GraphSpec, format: Format, search: bool, budget: &BudgetArgs) -> AppResult<Outcome> {
    let closed = closed_form_params(spec)?;
    let report = ReportDto::new(spec, &closed, group_order(spec).ok())?;
    let mut dto = ParamsDto { report, search: None, status: None, detail: None };
    let mut exit = Exit::Success;
    if search {
        let v = verify_spec(spec, &budget.brute(), &budget.search())?;
        if v.search.is_some() {
            dto.search = Some(search_row(&v)?);
        }
        dto.status = Some(v.status.label().to_string());
        dto.detail = v.status.detail().map(str::to_string);
        exit = status_exit(v.status.label() == "MISMATCH", v.status.label() == "SKIPPED", budget.strict);
    }
    let rows: Vec<ReportDto> = core::iter::once(dto.report.clone()).chain(dto.search.clone()).collect();
    let output = match format {
        Format::Json => render::json(&dto),
        Format::Csv => render::csv(&rows),
        Format::Md => render::markdown(&rows),
        Format::Text => {
            let mut out = render::report_text(&dto.report);
            if let Some(status) = &dto.status {
                write!(out, "search {status}").unwrap();
                if let Some(s) = &dto.search {
                    let cost = s.cost.map_or_else(|| "-".to_string(), |c| c.to_string());
                    write!(out, ": det {} dist {} cost {cost}", s.det, s.dist).unwrap();
                }
                out.push('\n');
                if let Some(d) = &dto.detail {
                    writeln!(out, "  {d}").unwrap();
                }
            }
            out
        }
        other => return Err(unsupported(other, "params")),
    };
    Ok(Outcome { output, exit })
}

fn table(specs: &[GraphSpec], format: Format, search: bool, budget: &BudgetArgs) -> AppResult<Outcome> {
    let (brute, sb) = (budget.brute(), budget.search());
    let computed: Vec<AppResult<(ReportDto, &'static str)>> = specs
        .par_iter()
        .map(|spec| {
            if search {
                let v = verify_spec(spec, &brute, &sb)?;
                Ok((search_row(&v)?, v.status.label()))
            } else {
                let r = closed_form_params(spec)?;
                Ok((ReportDto::new(spec, &r, group_order(spec).ok())?, "MATCH"))
            }
        })
        .collect();
    let mut rows = Vec::with_capacity(computed.len());
    let (mut mismatch, mut skipped) = (false, false);
    for c in computed {
        let (row, status) = c?;
        mismatch |= status == "MISMATCH";
        skipped |= status == "SKIPPED";
        rows.push(row);
    }
    let output = match format {
        Format::Md => render::markdown(&rows),
        Format::Csv => render::csv(&rows),
        Format::Json => render::json(&rows),
        Format::Text => render::table_text(&rows),
        Format::Dot => return Err(unsupported(format, "table")),
    };
    Ok(Outcome { output, exit: status_exit(mismatch, skipped, budget.strict) })
}

fn verify(specs: &[GraphSpec], format: Format, budget: &BudgetArgs) -> AppResult<Outcome> {
    let (brute, sb) = (budget.brute(), budget.search());
    let results: Vec<AppResult<VerifyDto>> = specs
        .par_iter()
        .map(|spec| {
            let g = verify_group(spec, &brute)?;
            let p = verify_spec(spec, &brute, &sb)?;
            Ok(VerifyDto::new(&g, &p))
        })
        .collect();
    let rows = results.into_iter().collect::<AppResult<Vec<_>>>()?;
    let mismatches = rows.iter().filter(|r| r.has_mismatch()).count();
    let skips = rows.iter().filter(|r| !r.has_mismatch() && r.has_skip()).count();
    let output = match format {
        Format::Json => render::json(&rows),
        Format::Csv => render::verify_csv(&rows),
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                writeln!(out, "{}", render::verify_line(r)).unwrap();
            }
            let matched = rows.len() - mismatches - skips;
            writeln!(out, "{} specs: {matched} MATCH, {mismatches} MISMATCH, {skips} SKIPPED", rows.len()).unwrap();
            out
        }
        other => return Err(unsupported(other, "verify")),
    };
    Ok(Outcome { output, exit: status_exit(mismatches > 0, skips > 0, budget.strict) })
}

/// The shipped reflection table, the β-lift for p = 2, the single-preserver
/// sets for 6 <= j <= 12, and the j = p = 3 class check.
pub fn appendix_checks() -> Vec<AppendixCheck> {
    let mut checks = vec![AppendixCheck::Table3(table3::shipped()), AppendixCheck::C1];
    checks.extend((6..=12).map(AppendixCheck::C2));
    checks.push(AppendixCheck::C3);
    checks
}

fn appendix(format: Format) -> AppResult<Outcome> {
    let reports: Vec<AppResult<AppendixDto>> =
        appendix_checks().par_iter().map(|c| Ok(verify_appendix(c)?.into())).collect();
    let reports = reports.into_iter().collect::<AppResult<Vec<_>>>()?;
    let failed = reports.iter().any(|r| !r.passed);
    let output = match format {
        Format::Json => render::json(&reports),
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{mark} {}", r.check).unwrap();
                for d in &r.details {
                    writeln!(out, "    {d}").unwrap();
                }
            }
            out
        }
        other => return Err(unsupported(other, "appendix")),
    };
    Ok(Outcome { output, exit: if failed { Exit::Mismatch } else { Exit::Success } })
}

fn export(args: &SpecArgs, format: Format) -> AppResult<Outcome> {
    // plain circulants may be exported even when disconnected
    let (spec, name) = match args.subdivide {
        None => {
            let base: CirculantSpec = normalize(args.n, args.i, args.j)?;
            (GraphSpec::Base(base), base.to_string())
        }
        Some(_) => {
            let s = args.spec()?;
            (s, s.to_string())
        }
    };
    let g = spec.build();
    Ok(Outcome::ok(match format {
        Format::Dot => render::dot(&name, &g),
        Format::Json => render::json(&GraphDto::new(name, &g)),
        other => return Err(unsupported(other, "export")),
    }))
}

/// Parses `args`, runs the command, writes the output, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Exit::Usage as i32 } else { Exit::Success as i32 };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &outcome.output) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return Exit::Usage as i32;
                    }
                }
                None => print!("{}", outcome.output),
            }
            outcome.exit as i32
        }
        Err(e) => {
            eprintln!("error: {e}");
            Exit::Usage as i32
        }
    }
}
