//! Command-line dispatch: every toolkit capability behind one binary.
//!
//! Each subcommand prints one machine-readable JSON document on stdout.
//! Exit codes: 0 success, 1 usage error, 2 computation error, 3 budget
//! exhausted. Budgets and tolerances come from [`crate::config::Config`]
//! (config file plus `PLANAR_CENTERS_*` environment overrides); the `ideal`
//! subcommand can additionally tighten its own budget per invocation.

use std::collections::BTreeMap;
use std::fs;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::checks::{self, CheckError};
use crate::compactify::{self, chart_field, Chart, CompactifyError, InfinitePoint};
use crate::config::{Config, ConfigError};
use crate::desing::{self, DesingError};
use crate::fixtures::{self, FixtureError};
use crate::globalcenter::{
    self, root_location_string, FamilyParameters, GlobalCenterError, Mode as CenterMode,
};
use crate::ideals::{
    buchberger, is_in_ideal, is_in_radical, normal_form, GbBudget, IdealError, MonomialOrder,
    OrderKind,
};
use crate::lyapunov::{self, lyapunov_constants, LyapunovError};
use crate::parse::parse_poly;
use crate::poly::{MultiPoly, PolyError};
use crate::portrait::{self, PortraitError, RenderSpec};
use crate::roots::RootError;
use crate::system::{PlanarSystem, SystemDescription, SystemError};
use crate::vars::VariableTable;

// ----- errors and exit codes --------------------------------------------------------

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad invocation: unknown names, malformed arguments, unreadable input.
    #[error("{0}")]
    Usage(String),
    /// The computation itself failed or refused the input.
    #[error("{0}")]
    Computation(String),
    /// A configured resource budget ran out before an answer was reached.
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Computation(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

fn ideal_error(e: IdealError) -> CliError {
    match e {
        IdealError::BudgetExhausted { .. } => CliError::Budget(e.to_string()),
        other => CliError::Computation(other.to_string()),
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        ideal_error(e)
    }
}

impl From<LyapunovError> for CliError {
    fn from(e: LyapunovError) -> Self {
        match e {
            LyapunovError::Ideal(inner) => ideal_error(inner),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<GlobalCenterError> for CliError {
    fn from(e: GlobalCenterError) -> Self {
        match e {
            GlobalCenterError::UnknownParameter(_) | GlobalCenterError::BadAssignment(_) => {
                CliError::Usage(e.to_string())
            }
            GlobalCenterError::Ideal(inner) => ideal_error(inner),
            GlobalCenterError::Lyapunov(inner) => inner.into(),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::UnknownTarget(_) => CliError::Usage(e.to_string()),
            CheckError::Ideal(inner) => ideal_error(inner),
            CheckError::Lyapunov(inner) => inner.into(),
            CheckError::GlobalCenter(inner) => inner.into(),
            CheckError::Fixture(inner) => inner.into(),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<FixtureError> for CliError {
    fn from(e: FixtureError) -> Self {
        match e {
            FixtureError::UnknownFixture(_) | FixtureError::UnverifiedFixture(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SystemError> for CliError {
    fn from(e: SystemError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CompactifyError> for CliError {
    fn from(e: CompactifyError) -> Self {
        CliError::Computation(e.to_string())
    }
}

impl From<DesingError> for CliError {
    fn from(e: DesingError) -> Self {
        CliError::Computation(e.to_string())
    }
}

impl From<PortraitError> for CliError {
    fn from(e: PortraitError) -> Self {
        CliError::Computation(e.to_string())
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        CliError::Computation(e.to_string())
    }
}

// ----- argument surface -------------------------------------------------------------

/// Exact center and global-center analysis for planar polynomial systems.
#[derive(Debug, Parser)]
#[command(name = "planar-centers", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute Lyapunov constants of a rotation-linear system.
    Lyapunov(LyapunovArgs),
    /// Decide center vs focus for quintic-family parameter values.
    CenterCheck(CenterCheckArgs),
    /// Decide whether the family center is a global center.
    GlobalCenter(GlobalCenterArgs),
    /// Print compactified chart fields and the equilibria at infinity.
    Compactify(CompactifyArgs),
    /// Classify an equilibrium through blow-up resolution.
    Classify(ClassifyArgs),
    /// Gröbner bases, normal forms, ideal and radical membership.
    Ideal(IdealArgs),
    /// Render orbits on the compactified disc as an SVG file.
    Portrait(PortraitArgs),
    /// Run pinned reference computations and compare against fixtures.
    Reproduce(ReproduceArgs),
}

/// Shared system input: a bundled fixture or a JSON description file, with
/// optional family-parameter bindings.
#[derive(Debug, Args)]
pub struct SystemOpt {
    /// `fixture:<name>` or the path of a JSON file `{"vars"?, "p", "q", "bind"?}`.
    #[arg(long, default_value = "fixture:quintic-family")]
    pub system: String,
    /// Comma-separated bindings for family parameters, e.g. `a3=-1,a5=-1/2`.
    #[arg(long, default_value = "")]
    pub params: String,
}

impl SystemOpt {
    pub fn load(&self) -> Result<PlanarSystem, CliError> {
        let sys = if let Some(name) = self.system.strip_prefix("fixture:") {
            fixtures::system_fixture(name)?.build()?
        } else {
            let text = fs::read_to_string(&self.system).map_err(|e| {
                CliError::Usage(format!("cannot read system file {}: {e}", self.system))
            })?;
            SystemDescription::from_json_str(&text)?.build()?
        };
        if self.params.is_empty() {
            return Ok(sys);
        }
        let params = FamilyParameters::parse_assignments(&self.params)?;
        Ok(sys.bind(&params.bindings())?)
    }
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    #[command(flatten)]
    pub system: SystemOpt,
    /// Highest constant index to compute.
    #[arg(long, default_value_t = 9)]
    pub max_index: usize,
    /// Reduce each constant modulo the ideal of the earlier odd ones.
    #[arg(long)]
    pub reduced: bool,
}

#[derive(Debug, Args)]
pub struct CenterCheckArgs {
    /// Comma-separated family parameter bindings, e.g. `a3=-1,a5=-1`.
    #[arg(long, default_value = "")]
    pub params: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Theorem,
    Pipeline,
    Both,
}

#[derive(Debug, Args)]
pub struct GlobalCenterArgs {
    /// Comma-separated family parameter bindings.
    #[arg(long, default_value = "")]
    pub params: String,
    /// Decision procedure: coefficient predicate, geometric pipeline, or both.
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct CompactifyArgs {
    #[command(flatten)]
    pub system: SystemOpt,
    /// Print a single chart field (U1, U2, V1, V2) instead of the full summary.
    #[arg(long)]
    pub chart: Option<String>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub system: SystemOpt,
    /// Equilibrium to classify, as `x,y` with rational coordinates.
    #[arg(long, default_value = "0,0")]
    pub point: String,
    /// Maximum blow-up depth.
    #[arg(long)]
    pub depth: Option<u32>,
}

#[derive(Debug, Args)]
pub struct IdealArgs {
    /// Semicolon-separated generator expressions, e.g. `x^2 - y; x*y - 1`.
    #[arg(long, conflicts_with = "fixture")]
    pub gens: Option<String>,
    /// Bundled ideal fixture name.
    #[arg(long)]
    pub fixture: Option<String>,
    /// Comma-separated variable names for `--gens` (default: the canonical table).
    #[arg(long)]
    pub vars: Option<String>,
    /// Monomial order: `degrevlex`, `lex`, or `elim:<k>` (eliminate the first k).
    #[arg(long, default_value = "degrevlex")]
    pub order: String,
    /// Step budget for the basis computation.
    #[arg(long)]
    pub max_steps: Option<u64>,
    /// Wall-clock budget in seconds for the basis computation.
    #[arg(long)]
    pub max_seconds: Option<u64>,
    /// Reduce this polynomial to normal form modulo the basis.
    #[arg(long)]
    pub normal_form: Option<String>,
    /// Test ideal membership of this polynomial.
    #[arg(long)]
    pub member: Option<String>,
    /// Test radical membership of this polynomial.
    #[arg(long)]
    pub radical_member: Option<String>,
    /// Allow fixtures whose transcription is not verified.
    #[arg(long)]
    pub allow_unverified: bool,
}

#[derive(Debug, Args)]
pub struct PortraitArgs {
    #[command(flatten)]
    pub system: SystemOpt,
    /// Orbit seeds as `x,y` pairs separated by `;`.
    #[arg(long, default_value = "1,0;2,0;4,0")]
    pub seeds: String,
    /// Output SVG path.
    #[arg(long, default_value = "portrait.svg")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// List available targets and exit.
    #[arg(long, conflicts_with_all = ["target", "all"])]
    pub list: bool,
    /// Run one named target.
    #[arg(long)]
    pub target: Option<String>,
    /// Run every target in order.
    #[arg(long, conflicts_with = "target")]
    pub all: bool,
    /// Allow targets to use fixtures whose transcription is not verified.
    #[arg(long)]
    pub allow_unverified: bool,
}

// ----- dispatch ---------------------------------------------------------------------

/// Run a parsed invocation and produce the JSON document for stdout.
pub fn run(cli: &Cli) -> Result<Value, CliError> {
    let config = Config::load()?;
    match &cli.command {
        Command::Lyapunov(args) => run_lyapunov(args, &config),
        Command::CenterCheck(args) => run_center_check(args),
        Command::GlobalCenter(args) => run_global_center(args, &config),
        Command::Compactify(args) => run_compactify(args, &config),
        Command::Classify(args) => run_classify(args, &config),
        Command::Ideal(args) => run_ideal(args, &config),
        Command::Portrait(args) => run_portrait(args, &config),
        Command::Reproduce(args) => run_reproduce(args, &config),
    }
}

fn run_lyapunov(args: &LyapunovArgs, config: &Config) -> Result<Value, CliError> {
    if args.max_index == 0 {
        return Err(CliError::Usage("--max-index must be at least 1".to_string()));
    }
    let sys = args.system.load()?;
    let out = lyapunov_constants(&sys, args.max_index, args.reduced, &config.gb_budget())?;
    let constants: Vec<Value> = out
        .constants
        .iter()
        .enumerate()
        .map(|(i, p)| json!({"index": i + 1, "value": p.to_string()}))
        .collect();
    Ok(json!({
        "system": {"p": sys.p().to_string(), "q": sys.q().to_string()},
        "reduced": out.reduced,
        "time_reversed": out.time_reversed,
        "constants": constants,
    }))
}

fn run_center_check(args: &CenterCheckArgs) -> Result<Value, CliError> {
    let params = FamilyParameters::parse_assignments(&args.params)?;
    let report = globalcenter::center_check(&params)?;
    Ok(json!({
        "params": params.display_map(),
        "report": serde_json::to_value(&report)
            .map_err(|e| CliError::Computation(e.to_string()))?,
    }))
}

fn run_global_center(args: &GlobalCenterArgs, config: &Config) -> Result<Value, CliError> {
    let params = FamilyParameters::parse_assignments(&args.params)?;
    let opts = config.pipeline_options();
    let to_value = |m| -> Result<Value, CliError> {
        let ev = globalcenter::global_center_check_with(&params, m, &opts)?;
        serde_json::to_value(&ev).map_err(|e| CliError::Computation(e.to_string()))
    };
    let doc = match args.mode {
        ModeArg::Theorem => json!({"theorem": to_value(CenterMode::Theorem)?}),
        ModeArg::Pipeline => json!({"pipeline": to_value(CenterMode::Pipeline)?}),
        ModeArg::Both => {
            let t = to_value(CenterMode::Theorem)?;
            let p = to_value(CenterMode::Pipeline)?;
            let agree = t["verdict"] == p["verdict"];
            json!({"theorem": t, "pipeline": p, "verdicts_agree": agree})
        }
    };
    Ok(doc)
}

fn run_compactify(args: &CompactifyArgs, config: &Config) -> Result<Value, CliError> {
    let sys = args.system.load()?;
    if let Some(name) = &args.chart {
        let chart = Chart::parse(name)
            .ok_or_else(|| CliError::Usage(format!("unknown chart {name:?}")))?;
        let field = chart_field(&sys, chart)?;
        return Ok(json!({
            "chart": chart.to_string(),
            "degree": field.degree,
            "p": field.system.p().to_string(),
            "q": field.system.q().to_string(),
        }));
    }
    let mut charts = serde_json::Map::new();
    for chart in [Chart::U1, Chart::U2, Chart::V1, Chart::V2] {
        let field = chart_field(&sys, chart)?;
        charts.insert(
            chart.to_string(),
            json!({"p": field.system.p().to_string(), "q": field.system.q().to_string()}),
        );
    }
    let analysis = compactify::infinite_equilibria(&sys, &config.root_width)?;
    let points: Option<Vec<String>> = analysis.points.as_ref().map(|pts| {
        pts.iter()
            .map(|pt| match pt {
                InfinitePoint::U1 { x } => {
                    format!("U1 slope {}", root_location_string(&x.loc))
                }
                InfinitePoint::U2Origin => "U2 origin (vertical direction)".to_string(),
            })
            .collect()
    });
    Ok(json!({
        "degree": analysis.degree,
        "charts": charts,
        "infinity": {
            "restriction": analysis.restriction.to_string(),
            "u2_origin_equilibrium": analysis.u2_origin_equilibrium,
            "line_of_equilibria": analysis.line_of_equilibria,
            "points": points,
        },
    }))
}

fn run_classify(args: &ClassifyArgs, config: &Config) -> Result<Value, CliError> {
    let sys = args.system.load()?;
    let (x, y) = parse_point(&args.point)?;
    let depth = args.depth.unwrap_or(config.blowup_depth);
    let report = desing::resolve_local_portrait(&sys, (&x, &y), depth)?;
    serde_json::to_value(&report).map_err(|e| CliError::Computation(e.to_string()))
}

fn parse_point(s: &str) -> Result<(crate::poly::Rat, crate::poly::Rat), CliError> {
    let (xs, ys) = s
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("point {s:?} is not of the form x,y")))?;
    let x = crate::jsonio::rat_from_str(xs.trim())?;
    let y = crate::jsonio::rat_from_str(ys.trim())?;
    Ok((x, y))
}

fn parse_order(spec: &str, table: &Arc<VariableTable>) -> Result<MonomialOrder, CliError> {
    let kind = if spec == "degrevlex" {
        return Ok(MonomialOrder::default_for(table));
    } else if spec == "lex" {
        OrderKind::Lex
    } else if let Some(k) = spec.strip_prefix("elim:") {
        let block: usize = k
            .parse()
            .map_err(|_| CliError::Usage(format!("bad elimination block {k:?}")))?;
        if block == 0 || block >= table.len() {
            return Err(CliError::Usage(format!(
                "elimination block must be in 1..{}",
                table.len()
            )));
        }
        OrderKind::Elimination { block }
    } else {
        return Err(CliError::Usage(format!(
            "unknown order {spec:?} (expected degrevlex, lex, or elim:<k>)"
        )));
    };
    MonomialOrder::with_leading(kind, table, &[]).map_err(|e| CliError::Usage(e.to_string()))
}

fn run_ideal(args: &IdealArgs, config: &Config) -> Result<Value, CliError> {
    let allow = args.allow_unverified || config.allow_unverified_fixtures;
    let (table, gens): (Arc<VariableTable>, Vec<MultiPoly>) = if let Some(name) = &args.fixture {
        let fx = fixtures::ideal_fixture(name, allow)?;
        let table = fx.generators[0].table().clone();
        (table, fx.generators)
    } else if let Some(list) = &args.gens {
        let table = match &args.vars {
            Some(names) => {
                let names: Vec<&str> = names.split(',').map(str::trim).collect();
                VariableTable::new(&names)?
            }
            None => VariableTable::canonical(),
        };
        let gens = list
            .split(';')
            .map(|s| parse_poly(&table, s.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        (table, gens)
    } else {
        return Err(CliError::Usage(
            "one of --gens or --fixture is required".to_string(),
        ));
    };
    if gens.is_empty() {
        return Err(CliError::Usage("at least one generator is required".to_string()));
    }

    let mut budget = config.gb_budget();
    if args.max_steps.is_some() {
        budget.max_steps = args.max_steps;
    }
    if let Some(secs) = args.max_seconds {
        budget.max_time = Some(std::time::Duration::from_secs(secs));
    }

    let order = parse_order(&args.order, &table)?;
    let gb = buchberger(&gens, &order, &budget)?;
    let mut doc = json!({
        "order": args.order,
        "steps": gb.steps,
        "basis": gb.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    });
    if let Some(expr) = &args.normal_form {
        let p = parse_poly(&table, expr)?;
        doc["normal_form"] = json!(normal_form(&p, &gb)?.to_string());
    }
    if let Some(expr) = &args.member {
        let p = parse_poly(&table, expr)?;
        doc["member"] = json!(is_in_ideal(&p, &gb)?);
    }
    if let Some(expr) = &args.radical_member {
        let p = parse_poly(&table, expr)?;
        doc["radical_member"] = json!(is_in_radical(&p, &gens, &budget)?);
    }
    Ok(doc)
}

fn parse_seeds(s: &str) -> Result<Vec<(f64, f64)>, CliError> {
    s.split(';')
        .map(|pair| {
            let (xs, ys) = pair
                .split_once(',')
                .ok_or_else(|| CliError::Usage(format!("seed {pair:?} is not of the form x,y")))?;
            let x: f64 = xs.trim().parse().map_err(|_| {
                CliError::Usage(format!("seed coordinate {xs:?} is not a number"))
            })?;
            let y: f64 = ys.trim().parse().map_err(|_| {
                CliError::Usage(format!("seed coordinate {ys:?} is not a number"))
            })?;
            Ok((x, y))
        })
        .collect()
}

fn run_portrait(args: &PortraitArgs, config: &Config) -> Result<Value, CliError> {
    let sys = args.system.load()?;
    let seeds = parse_seeds(&args.seeds)?;
    if seeds.is_empty() {
        return Err(CliError::Usage("at least one seed is required".to_string()));
    }
    let spec = RenderSpec {
        seeds: seeds.clone(),
        integration: config.integration_spec(),
        out: Some(args.out.clone()),
        ..RenderSpec::default()
    };
    let svg = portrait::render_disc(&sys, &spec)?;
    fs::write(&args.out, &svg)
        .map_err(|e| CliError::Computation(format!("cannot write {}: {e}", args.out)))?;
    let orbits: Vec<Value> = seeds
        .iter()
        .map(|&seed| {
            let trace = portrait::integrate(&sys, seed, &spec.integration)?;
            Ok(json!({
                "seed": [seed.0, seed.1],
                "verdict": serde_json::to_value(&trace.verdict)
                    .map_err(|e| CliError::Computation(e.to_string()))?,
            }))
        })
        .collect::<Result<_, CliError>>()?;
    Ok(json!({
        "out": args.out,
        "bytes": svg.len(),
        "orbits": orbits,
    }))
}

fn run_reproduce(args: &ReproduceArgs, config: &Config) -> Result<Value, CliError> {
    if args.list {
        let targets: Vec<Value> = checks::TARGETS
            .iter()
            .map(|t| json!({"name": t.name, "description": t.description}))
            .collect();
        return Ok(json!({"targets": targets}));
    }
    let mut config = config.clone();
    config.allow_unverified_fixtures |= args.allow_unverified;
    if args.all {
        let mut results = Vec::new();
        for t in checks::TARGETS {
            results.push(checks::run_target(t.name, &config)?);
        }
        return Ok(json!({"results": results}));
    }
    match &args.target {
        Some(name) => Ok(checks::run_target(name, &config)?),
        None => Err(CliError::Usage(
            "one of --list, --target <name>, or --all is required".to_string(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn parse(argv: &[&str]) -> Cli {
        Cli::try_parse_from(argv).expect("valid argv")
    }

    #[test]
    fn reproduce_list_names_every_target() {
        let cli = parse(&["planar-centers", "reproduce", "--list"]);
        let doc = run(&cli).unwrap();
        let names: Vec<&str> = doc["targets"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["name"].as_str().unwrap())
            .collect();
        assert_eq!(names.len(), checks::TARGETS.len());
        assert!(names.contains(&"lyapunov-opening"));
    }

    #[test]
    fn lyapunov_subcommand_reports_opening_constants() {
        let cli = parse(&[
            "planar-centers",
            "lyapunov",
            "--max-index",
            "3",
        ]);
        let doc = run(&cli).unwrap();
        assert_eq!(doc["constants"][0]["value"], "0");
        assert_eq!(
            doc["constants"][2]["value"],
            "-5/16*a0 - 1/16*a2 - 1/16*a4"
        );
    }

    #[test]
    fn global_center_both_modes_agree() {
        let cli = parse(&[
            "planar-centers",
            "global-center",
            "--params",
            "a3=-1,a5=-1",
        ]);
        let doc = run(&cli).unwrap();
        assert_eq!(doc["verdicts_agree"], true);
        assert_eq!(doc["theorem"]["verdict"], "true");
    }

    #[test]
    fn ideal_budget_exhaustion_maps_to_exit_code_3() {
        let cli = parse(&[
            "planar-centers",
            "ideal",
            "--gens",
            "x^2*y - 1; x*y^2 - x; y^3 - x^2",
            "--vars",
            "x,y",
            "--max-steps",
            "1",
        ]);
        let err = run(&cli).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn unknown_fixture_is_a_usage_error() {
        let cli = parse(&["planar-centers", "ideal", "--fixture", "nope"]);
        let err = run(&cli).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn unverified_fixture_requires_flag() {
        let cli = parse(&["planar-centers", "ideal", "--fixture", "center-component-3"]);
        assert_eq!(run(&cli).unwrap_err().exit_code(), 1);
        let cli = parse(&[
            "planar-centers",
            "ideal",
            "--fixture",
            "center-component-3",
            "--allow-unverified",
        ]);
        let doc = run(&cli).unwrap();
        assert!(doc["basis"].as_array().unwrap().len() >= 5);
    }

    #[test]
    fn classify_reports_saddle_fixture() {
        let cli = parse(&[
            "planar-centers",
            "classify",
            "--system",
            "fixture:quintic-family",
            "--params",
            "a3=1,a5=0",
            "--point",
            "0,0",
        ]);
        let doc = run(&cli).unwrap();
        // The family origin is always a rotation: focus or center.
        assert_eq!(doc["kind"], "HyperbolicFocusOrCenter");
    }
}
