//! Command implementations behind the `interp` binary.
//!
//! Each command returns its output as a string so it can be tested without
//! spawning a process.

pub mod reproduce;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use interp_core::planner::Objective;
use interp_core::scores::score_trajectory;
use interp_core::{
    parse_scenario, plan, AgentModel, Aggregation, Direction, GridScenario, HypothesisSet, Observer, ParameterSelector,
    ScoreReport, ScoreTargets, Trace, Weights,
};
use thiserror::Error;

pub use reproduce::{cmd_reproduce, Property, Report};

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] interp_core::Error),

    #[error("missing fixture {0}")]
    Fixture(PathBuf),

    #[error("{path}: {reason}")]
    Io { path: PathBuf, reason: String },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Fixture(_) => "fixture",
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
        }
    }
}

pub fn load_scenario(path: &Path) -> Result<(GridScenario, HypothesisSet)> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), reason: e.to_string() })?;
    Ok(parse_scenario(&text)?)
}

/// `goal=<label>` or `beta=<value>`.
pub fn parse_theta(s: &str) -> Result<ParameterSelector> {
    let bad = || CliError::Usage(format!("theta must be goal=<label> or beta=<value>, got `{s}`"));
    let (key, value) = s.split_once('=').ok_or_else(bad)?;
    match key {
        "goal" => {
            let mut chars = value.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_uppercase() => Ok(ParameterSelector::goal(c)),
                _ => Err(bad()),
            }
        }
        "beta" if value == "inf" => Ok(ParameterSelector::beta(f64::INFINITY)),
        "beta" => value.parse().map(ParameterSelector::beta).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

/// `e=1,l=0,p=0,d=0,o=0`; omitted keys are zero.
pub fn parse_weights(s: &str) -> Result<Weights> {
    let mut w = Weights::default();
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (key, value) =
            part.split_once('=').ok_or_else(|| CliError::Usage(format!("weight `{part}` is not key=value")))?;
        let v: f64 = value.parse().map_err(|_| CliError::Usage(format!("weight `{part}` is not a number")))?;
        let slot = match key {
            "e" => &mut w.explicability,
            "l" => &mut w.legibility,
            "p" => &mut w.predictability,
            "d" => &mut w.deception,
            "o" => &mut w.obfuscation,
            _ => return Err(CliError::Usage(format!("unknown weight `{key}`, expected one of e, l, p, d, o"))),
        };
        *slot = v;
    }
    Ok(w)
}

fn true_model<'a>(hs: &'a HypothesisSet, id: Option<&str>) -> Result<&'a AgentModel> {
    match id {
        Some(id) => hs.model(id).ok_or_else(|| CliError::Usage(format!("no model `{id}` in the scenario"))),
        None => hs.models().first().ok_or_else(|| CliError::Usage("scenario has no explicit models".into())),
    }
}

/// Six decimals, never `-0.000000`.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn write_csv(out: &mut String, selector: &ParameterSelector, reports: &[ScoreReport]) {
    let _ = writeln!(
        out,
        "step,explicability,legibility_{},predictability_remaining,deception,obfuscation",
        selector.label()
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.prefix_length,
            fmt6(r.explicability),
            fmt6(r.legibility.unwrap_or(0.0)),
            fmt6(r.predictability.unwrap_or(0.0)),
            fmt6(r.deception.unwrap_or(0.0)),
            fmt6(r.obfuscation),
        );
    }
}

/// A path is judged as a whole behavior when it ends on some model's goal
/// or cannot be extended.
fn is_complete(scenario: &GridScenario, hs: &HypothesisSet, trace: &Trace) -> bool {
    let end = scenario.cell(trace.terminal());
    let on_goal = hs.models().iter().any(|m| end == Some(interp_core::Cell::Object(m.goal())));
    on_goal || Direction::ALL.iter().all(|d| !scenario.validate_trace(&trace.extended(*d)))
}

#[derive(Debug, Clone)]
pub struct ScoreConfig {
    pub scenario: PathBuf,
    pub path: String,
    pub theta: Option<ParameterSelector>,
    pub true_model: Option<String>,
}

/// Score CSV for `path` walked in an already parsed scenario.
pub fn score_csv(
    scenario: &GridScenario,
    hs: &HypothesisSet,
    path: &str,
    theta: Option<ParameterSelector>,
    true_model_id: Option<&str>,
) -> Result<String> {
    let truth = true_model(hs, true_model_id)?;
    let selector = theta.unwrap_or_else(|| ParameterSelector::goal(truth.goal()));
    let trace = Trace::parse(scenario.start(), path)?;
    scenario.check_trace(&trace)?;
    let observer = Observer::new(scenario, hs)?;
    let targets =
        ScoreTargets { selector: Some(selector), intended: Some(trace.clone()), true_model: Some(truth.id().into()) };
    let reports = score_trajectory(&observer, &trace, &targets, is_complete(scenario, hs, &trace))?;
    let mut out = String::new();
    write_csv(&mut out, &selector, &reports);
    Ok(out)
}

pub fn cmd_score(cfg: &ScoreConfig) -> Result<String> {
    let (s, hs) = load_scenario(&cfg.scenario)?;
    score_csv(&s, &hs, &cfg.path, cfg.theta, cfg.true_model.as_deref())
}

#[derive(Debug, Clone)]
pub struct PlanConfig {
    pub scenario: PathBuf,
    pub true_model: String,
    pub weights: Weights,
    pub theta: Option<ParameterSelector>,
    pub optimal_only: bool,
    pub aggregation: Aggregation,
}

/// A comment line with the chosen trace and its objective value, then the
/// score CSV of that trace.
pub fn cmd_plan(cfg: &PlanConfig) -> Result<String> {
    let (s, hs) = load_scenario(&cfg.scenario)?;
    let truth = true_model(&hs, Some(&cfg.true_model))?;
    let selector = cfg.theta.unwrap_or_else(|| ParameterSelector::goal(truth.goal()));
    let objective = Objective::new(cfg.weights)
        .with_selector(selector)
        .with_aggregation(cfg.aggregation)
        .optimal_only(cfg.optimal_only);
    let p = plan(&s, &hs, truth, &objective)?;
    let mut out = String::new();
    let _ = writeln!(out, "# trace={} value={}", p.trace.action_string(), fmt6(p.value));
    write_csv(&mut out, &selector, &p.reports);
    Ok(out)
}

/// Fixtures shipped with this crate.
pub fn default_fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}
