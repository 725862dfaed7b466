//! Trace likelihoods P(trace | model) in the normative, Boltzmann and
//! uniform regimes, and prefix likelihoods by summing over completions.

use crate::enumerate::{optimal_subset, prefix_range, trace_cost, Behavior, BehaviorSet, Enumerator};
use crate::error::{Error, Result};
use crate::scenario::{AgentModel, GridScenario, LikelihoodKind, Trace};

/// Normalized distribution of one model over its behavior universe.
#[derive(Debug, Clone, PartialEq)]
pub struct LikelihoodTable {
    model_id: String,
    traces: Vec<Trace>,
    probs: Vec<f64>,
}

impl LikelihoodTable {
    /// Builds the table of `who` over its enumerated universe.
    pub fn build(scenario: &GridScenario, who: Behavior<'_>) -> Result<Self> {
        Self::build_with(&Enumerator::default(), scenario, who)
    }

    pub fn build_with(enumerator: &Enumerator, scenario: &GridScenario, who: Behavior<'_>) -> Result<Self> {
        let universe = enumerator.behaviors(scenario, who)?;
        match who {
            Behavior::M0 => Self::uniform("m0", universe),
            Behavior::Model(model) => Self::for_model(model, universe),
        }
    }

    /// Table of `model` given its (goal-reaching) universe.
    pub fn for_model(model: &AgentModel, universe: BehaviorSet) -> Result<Self> {
        if universe.is_empty() {
            return Err(Error::EmptyUniverse(model.id().to_string()));
        }
        match model.kind() {
            LikelihoodKind::Uniform => Self::uniform(model.id(), universe),
            LikelihoodKind::Normative => {
                // probability 1/m on the optimal traces, 0 elsewhere
                let optimal = optimal_subset(universe.clone(), model)?;
                let m = optimal.len() as f64;
                let probs = universe.traces().iter().map(|t| if optimal.contains(t) { 1.0 / m } else { 0.0 }).collect();
                Ok(LikelihoodTable { model_id: model.id().to_string(), traces: universe.into_traces(), probs })
            }
            LikelihoodKind::Boltzmann => {
                let beta = model.beta();
                let logw: Vec<f64> = universe.traces().iter().map(|t| -beta * trace_cost(model, t)).collect();
                let lse = log_sum_exp(&logw);
                let probs = logw.iter().map(|w| (w - lse).exp()).collect();
                Ok(LikelihoodTable { model_id: model.id().to_string(), traces: universe.into_traces(), probs })
            }
        }
    }

    fn uniform(id: &str, universe: BehaviorSet) -> Result<Self> {
        if universe.is_empty() {
            return Err(Error::EmptyUniverse(id.to_string()));
        }
        let p = 1.0 / universe.len() as f64;
        let probs = vec![p; universe.len()];
        Ok(LikelihoodTable { model_id: id.to_string(), traces: universe.into_traces(), probs })
    }

    pub fn model_id(&self) -> &str {
        &self.model_id
    }

    pub fn traces(&self) -> &[Trace] {
        &self.traces
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Trace, f64)> {
        self.traces.iter().zip(self.probs.iter().copied())
    }

    /// Probability of a full trace; 0 outside the universe.
    pub fn get(&self, trace: &Trace) -> f64 {
        self.traces.binary_search(trace).map_or(0.0, |i| self.probs[i])
    }

    /// Marginal probability of observing `prefix`, i.e. the summed
    /// probability of every full trace extending it.
    pub fn prefix_probability(&self, prefix: &Trace) -> f64 {
        self.range_probability(prefix_range(&self.traces, prefix))
    }

    pub(crate) fn range_probability(&self, range: std::ops::Range<usize>) -> f64 {
        self.probs[range].iter().fold(0.0, |a, b| a + b)
    }
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// P(trace | model) for a full trace.
pub fn likelihood_full(scenario: &GridScenario, who: Behavior<'_>, trace: &Trace) -> Result<f64> {
    Ok(LikelihoodTable::build(scenario, who)?.get(trace))
}

/// P(prefix | model): sum over completions. A model whose universe is empty
/// explains no prefix and yields 0.
pub fn likelihood_prefix(scenario: &GridScenario, who: Behavior<'_>, prefix: &Trace) -> Result<f64> {
    match LikelihoodTable::build(scenario, who) {
        Ok(table) => Ok(table.prefix_probability(prefix)),
        Err(Error::EmptyUniverse(_)) => Ok(0.0),
        Err(e) => Err(e),
    }
}
