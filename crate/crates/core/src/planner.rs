//! Behavior selection by exhaustive candidate scoring.
//!
//! Every goal-reaching trace of the true model (or only its optimal traces,
//! for the "lies by omission" mode) is scored against the observer and the
//! best weighted objective wins. Predictability is scored with the
//! candidate's own remaining suffix as the intended completion.

use rayon::prelude::*;

use crate::enumerate::{optimal_subset, Enumerator};
use crate::error::{Error, Result};
use crate::observer::Observer;
use crate::scenario::{AgentModel, GridScenario, HypothesisSet, ParameterSelector, Trace};
use crate::scores::{score_trajectory, ScoreReport, ScoreTargets};

/// Objective values closer than this count as ties, which are broken by the
/// lexicographically smallest action string.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Weights {
    pub explicability: f64,
    pub legibility: f64,
    pub predictability: f64,
    pub deception: f64,
    pub obfuscation: f64,
}

impl Weights {
    pub fn explicability(w: f64) -> Self {
        Weights { explicability: w, ..Default::default() }
    }

    pub fn legibility(w: f64) -> Self {
        Weights { legibility: w, ..Default::default() }
    }

    pub fn predictability(w: f64) -> Self {
        Weights { predictability: w, ..Default::default() }
    }

    fn as_array(&self) -> [f64; 5] {
        [self.explicability, self.legibility, self.predictability, self.deception, self.obfuscation]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregation {
    /// Score the complete trace only.
    #[default]
    FinalPrefix,
    /// Average over the proper prefixes (lengths `0..n`).
    MeanOverPrefixes,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Objective {
    pub weights: Weights,
    pub selector: Option<ParameterSelector>,
    pub aggregation: Aggregation,
    pub optimal_only: bool,
}

impl Objective {
    pub fn new(weights: Weights) -> Self {
        Objective { weights, selector: None, aggregation: Aggregation::FinalPrefix, optimal_only: false }
    }

    pub fn with_selector(mut self, selector: ParameterSelector) -> Self {
        self.selector = Some(selector);
        self
    }

    pub fn with_aggregation(mut self, aggregation: Aggregation) -> Self {
        self.aggregation = aggregation;
        self
    }

    pub fn optimal_only(mut self, on: bool) -> Self {
        self.optimal_only = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let w = self.weights.as_array();
        if w.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidObjective("weights must be finite".into()));
        }
        if w.iter().all(|x| *x == 0.0) {
            return Err(Error::InvalidObjective("at least one weight must be non-zero".into()));
        }
        if self.weights.legibility != 0.0 && self.selector.is_none() {
            return Err(Error::InvalidObjective("legibility is weighted but no parameter is selected".into()));
        }
        Ok(())
    }

    /// Weighted score of one report. Missing components count as 0.
    pub fn value_of(&self, r: &ScoreReport) -> f64 {
        let w = &self.weights;
        w.explicability * r.explicability
            + w.legibility * r.legibility.unwrap_or(0.0)
            + w.predictability * r.predictability.unwrap_or(0.0)
            + w.deception * r.deception.unwrap_or(0.0)
            + w.obfuscation * r.obfuscation
    }

    /// Aggregated objective over the reports of a candidate's prefixes
    /// (`reports[k]` is the report after `k` actions).
    pub fn aggregate(&self, reports: &[ScoreReport]) -> f64 {
        let n = reports.len() - 1;
        match self.aggregation {
            Aggregation::FinalPrefix => self.value_of(&reports[n]),
            Aggregation::MeanOverPrefixes if n == 0 => self.value_of(&reports[0]),
            Aggregation::MeanOverPrefixes => reports[..n].iter().map(|r| self.value_of(r)).sum::<f64>() / n as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub trace: Trace,
    pub value: f64,
    /// One report per prefix length, 0 through `trace.len()`.
    pub reports: Vec<ScoreReport>,
}

/// Candidate behaviors of `true_model`, lexicographically ordered.
pub fn candidates(scenario: &GridScenario, true_model: &AgentModel, optimal_only: bool) -> Result<Vec<Trace>> {
    let all = Enumerator::default().goal_traces(scenario, true_model)?;
    if all.is_empty() {
        return Err(Error::NoPlan(true_model.id().to_string()));
    }
    if optimal_only {
        Ok(optimal_subset(all, true_model)?.into_traces())
    } else {
        Ok(all.into_traces())
    }
}

/// Scores of every candidate, in candidate order.
pub fn evaluate_candidates(
    scenario: &GridScenario,
    hs: &HypothesisSet,
    true_model: &AgentModel,
    objective: &Objective,
) -> Result<Vec<Plan>> {
    objective.validate()?;
    let observer = Observer::new(scenario, hs)?;
    let cands = candidates(scenario, true_model, objective.optimal_only)?;
    cands
        .into_par_iter()
        .map(|trace| {
            let targets = ScoreTargets {
                selector: objective.selector,
                intended: Some(trace.clone()),
                true_model: Some(true_model.id().to_string()),
            };
            let reports = score_trajectory(&observer, &trace, &targets, true)?;
            let value = objective.aggregate(&reports);
            Ok(Plan { trace, value, reports })
        })
        .collect()
}

/// Best candidate under `objective`.
pub fn plan(
    scenario: &GridScenario,
    hs: &HypothesisSet,
    true_model: &AgentModel,
    objective: &Objective,
) -> Result<Plan> {
    let scored = evaluate_candidates(scenario, hs, true_model, objective)?;
    // sequential reduction over lexicographically ordered candidates: the
    // first of a group of ties is kept
    let mut best: Option<Plan> = None;
    for p in scored {
        match &best {
            Some(b) if p.value <= b.value + TIE_TOLERANCE => {}
            _ => best = Some(p),
        }
    }
    best.ok_or_else(|| Error::NoPlan(true_model.id().to_string()))
}
