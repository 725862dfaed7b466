//! The Bayesian observer: posterior over hypotheses given an observed
//! prefix, and the induced predictive distribution over its completions.
//!
//! An [`Observer`] enumerates every hypothesis' behavior universe once; each
//! [`ObserverState`] then only tracks, per hypothesis, the contiguous range
//! of universe traces that extend the observed prefix. Extending the prefix
//! by one action narrows those ranges, which gives the same ranges (and so
//! bit-identical posteriors) as recomputing from scratch.
//!
//! Two observation regimes are supported. [`Observer::observe`] treats the
//! trace as a prefix of ongoing behavior: each hypothesis is scored by the
//! total probability of its traces extending the prefix, M0's being the
//! maximal feasible traces. [`Observer::observe_complete`] treats the trace
//! as the whole behavior (its completion is empty): explicit models score
//! it by its own probability and M0 gives equal probability to every
//! feasible trace of any length.

use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;

use crate::enumerate::{narrow_range, prefix_range, Behavior, Enumerator};
use crate::error::{Error, Result};
use crate::likelihood::LikelihoodTable;
use crate::scenario::{Direction, GridScenario, HypothesisSet, ModelRef, Trace};

#[derive(Debug, Clone)]
pub struct Observer {
    scenario: GridScenario,
    hypotheses: HypothesisSet,
    /// Aligned with `hypotheses.refs()`; `None` for an empty universe.
    tables: Vec<Option<LikelihoodTable>>,
    /// Size of M0's universe for complete behaviors.
    feasible_count: u128,
}

impl Observer {
    pub fn new(scenario: &GridScenario, hypotheses: &HypothesisSet) -> Result<Self> {
        Self::with_enumerator(&Enumerator::default(), scenario, hypotheses)
    }

    pub fn with_enumerator(
        enumerator: &Enumerator,
        scenario: &GridScenario,
        hypotheses: &HypothesisSet,
    ) -> Result<Self> {
        let refs: Vec<ModelRef> = hypotheses.refs().collect();
        let tables = refs
            .par_iter()
            .map(|r| {
                let who = match *r {
                    ModelRef::Explicit(i) => Behavior::Model(&hypotheses.models()[i]),
                    ModelRef::M0 => Behavior::M0,
                };
                match LikelihoodTable::build_with(enumerator, scenario, who) {
                    Ok(t) => Ok(Some(t)),
                    Err(Error::EmptyUniverse(_)) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let feasible_count = enumerator.count_feasible_traces(scenario)?;
        Ok(Observer { scenario: scenario.clone(), hypotheses: hypotheses.clone(), tables, feasible_count })
    }

    pub fn scenario(&self) -> &GridScenario {
        &self.scenario
    }

    pub fn hypotheses(&self) -> &HypothesisSet {
        &self.hypotheses
    }

    pub fn table(&self, r: ModelRef) -> Option<&LikelihoodTable> {
        self.tables[self.slot(r)].as_ref()
    }

    fn slot(&self, r: ModelRef) -> usize {
        match r {
            ModelRef::Explicit(i) => i,
            ModelRef::M0 => self.hypotheses.models().len(),
        }
    }

    /// State after observing nothing.
    pub fn initial(&self) -> Result<ObserverState<'_>> {
        self.observe(&Trace::empty(self.scenario.start()))
    }

    /// Number of feasible traces of any length from the start.
    pub fn feasible_count(&self) -> u128 {
        self.feasible_count
    }

    /// State after observing `prefix` of ongoing behavior, computed from
    /// scratch.
    pub fn observe(&self, prefix: &Trace) -> Result<ObserverState<'_>> {
        ObserverState::new(self, prefix.clone(), self.ranges(prefix), false)
    }

    /// State after observing `trace` as a complete behavior.
    pub fn observe_complete(&self, trace: &Trace) -> Result<ObserverState<'_>> {
        ObserverState::new(self, trace.clone(), self.ranges(trace), true)
    }

    fn ranges(&self, prefix: &Trace) -> Vec<Range<usize>> {
        self.tables.iter().map(|t| t.as_ref().map_or(0..0, |t| prefix_range(t.traces(), prefix))).collect()
    }

    /// State after additionally observing `action`.
    pub fn update(&self, state: &ObserverState<'_>, action: Direction) -> Result<ObserverState<'_>> {
        let step = state.prefix.len();
        let at = state.prefix.terminal();
        let to = self
            .scenario
            .step(at, action)
            .ok_or_else(|| Error::InvalidAction { step, reason: format!("cannot move {} from {at}", action.name()) })?;
        if self.scenario.no_revisit() && state.prefix.states().contains(&to) {
            return Err(Error::InvalidAction { step, reason: format!("revisits {to}") });
        }
        let ranges = self
            .tables
            .iter()
            .zip(&state.ranges)
            .map(|(t, r)| t.as_ref().map_or(0..0, |t| narrow_range(t.traces(), r.clone(), step, action)))
            .collect();
        ObserverState::new(self, state.prefix.extended(action), ranges, false)
    }
}

/// Observer beliefs after a prefix. Posteriors are stored together with the
/// prefix they condition on.
#[derive(Debug, Clone)]
pub struct ObserverState<'o> {
    observer: &'o Observer,
    prefix: Trace,
    ranges: Vec<Range<usize>>,
    complete: bool,
    evidence: Vec<f64>,
    posterior: Vec<f64>,
}

impl<'o> ObserverState<'o> {
    fn new(observer: &'o Observer, prefix: Trace, ranges: Vec<Range<usize>>, complete: bool) -> Result<Self> {
        let m0 = observer.slot(ModelRef::M0);
        let evidence: Vec<f64> = observer
            .tables
            .iter()
            .zip(&ranges)
            .enumerate()
            .map(|(i, (t, r))| match t {
                None => 0.0,
                Some(t) if !complete => t.range_probability(r.clone()),
                // a non-empty M0 range means the trace is feasible from the start
                Some(_) if i == m0 => {
                    if r.is_empty() {
                        0.0
                    } else {
                        1.0 / observer.feasible_count as f64
                    }
                }
                // the trace itself sorts first among its extensions
                Some(t) if !r.is_empty() && t.traces()[r.start] == prefix => t.probs()[r.start],
                Some(_) => 0.0,
            })
            .collect();
        let joint: Vec<f64> = evidence.iter().zip(observer.hypotheses.prior_vector()).map(|(l, p)| l * p).collect();
        let total: f64 = joint.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(Error::ZeroEvidence);
        }
        let posterior = joint.iter().map(|j| j / total).collect();
        Ok(ObserverState { observer, prefix, ranges, complete, evidence, posterior })
    }

    pub fn observer(&self) -> &'o Observer {
        self.observer
    }

    pub fn prefix(&self) -> &Trace {
        &self.prefix
    }

    /// Whether the observed trace is taken to be the whole behavior.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn hypotheses(&self) -> &'o HypothesisSet {
        &self.observer.hypotheses
    }

    /// P(model | prefix), explicit models first and M0 last.
    pub fn model_posterior(&self) -> &[f64] {
        &self.posterior
    }

    pub fn posterior(&self, r: ModelRef) -> f64 {
        self.posterior[self.observer.slot(r)]
    }

    /// P(prefix | model) per hypothesis, aligned like the posterior.
    pub fn prefix_likelihoods(&self) -> &[f64] {
        &self.evidence
    }

    /// Same state advanced by one action.
    pub fn update(&self, action: Direction) -> Result<ObserverState<'o>> {
        self.observer.update(self, action)
    }

    /// P(completion | prefix), marginalized over hypotheses. `completion`
    /// must start at the prefix's terminal state; anything else has
    /// probability 0.
    pub fn completion_probability(&self, completion: &Trace) -> f64 {
        let Ok(full) = self.prefix.concat(completion) else {
            return 0.0;
        };
        if self.complete {
            return if completion.is_empty() { 1.0 } else { 0.0 };
        }
        self.observer
            .tables
            .iter()
            .zip(self.evidence.iter().zip(&self.posterior))
            .filter(|(_, (l, post))| **l > 0.0 && **post > 0.0)
            .map(|(t, (l, post))| t.as_ref().map_or(0.0, |t| post * t.get(&full) / l))
            .fold(0.0, |a, b| a + b)
    }

    /// Full predictive distribution over completions, keyed by suffix
    /// traces starting at the prefix's terminal state.
    pub fn completion_posterior(&self) -> BTreeMap<Trace, f64> {
        let end = self.prefix.terminal();
        let k = self.prefix.len();
        let mut out = BTreeMap::new();
        if self.complete {
            out.insert(Trace::empty(end), 1.0);
            return out;
        }
        for ((table, range), (l, post)) in
            self.observer.tables.iter().zip(&self.ranges).zip(self.evidence.iter().zip(&self.posterior))
        {
            let Some(table) = table else { continue };
            if *l <= 0.0 || *post <= 0.0 {
                continue;
            }
            for i in range.clone() {
                let suffix = Trace::new(end, table.traces()[i].actions[k..].to_vec());
                *out.entry(suffix).or_insert(0.0) += post * table.probs()[i] / l;
            }
        }
        out
    }
}

/// P(model | prefix) for every hypothesis (M0 last).
pub fn posterior_models(scenario: &GridScenario, hypotheses: &HypothesisSet, prefix: &Trace) -> Result<Vec<f64>> {
    Ok(Observer::new(scenario, hypotheses)?.observe(prefix)?.model_posterior().to_vec())
}

pub fn posterior_completions(
    scenario: &GridScenario,
    hypotheses: &HypothesisSet,
    prefix: &Trace,
) -> Result<BTreeMap<Trace, f64>> {
    Ok(Observer::new(scenario, hypotheses)?.observe(prefix)?.completion_posterior())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{AgentModel, Cell, Coord, MoveSet};

    fn square() -> GridScenario {
        let cells = vec![Cell::Free, Cell::Object('A'), Cell::Free, Cell::Object('G')];
        let moves: MoveSet = [Direction::Down, Direction::Right].into_iter().collect();
        GridScenario::new(2, 2, cells, Coord::new(0, 0), moves, true).unwrap()
    }

    fn hs(s: &GridScenario) -> HypothesisSet {
        let g = AgentModel::new("g", 'G', f64::INFINITY).unwrap();
        let a = AgentModel::new("a", 'A', f64::INFINITY).unwrap();
        HypothesisSet::new(s, vec![g, a], vec![0.45, 0.45], 0.1).unwrap()
    }

    #[test]
    fn empty_prefix_returns_priors() {
        let s = square();
        let h = hs(&s);
        let post = posterior_models(&s, &h, &Trace::empty(s.start())).unwrap();
        assert_eq!(post, vec![0.45, 0.45, 0.1]);
    }

    #[test]
    fn prefix_ruling_out_a_model() {
        let s = square();
        let h = hs(&s);
        let post = posterior_models(&s, &h, &Trace::parse(s.start(), "D").unwrap()).unwrap();
        assert_eq!(post[1], 0.0);
        assert!((post.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn incremental_update_matches_recomputation() {
        let s = square();
        let h = hs(&s);
        let obs = Observer::new(&s, &h).unwrap();
        let mut state = obs.initial().unwrap();
        for d in [Direction::Right, Direction::Down] {
            state = state.update(d).unwrap();
            let fresh = obs.observe(state.prefix()).unwrap();
            assert_eq!(state.model_posterior(), fresh.model_posterior());
            assert_eq!(state.completion_posterior(), fresh.completion_posterior());
        }
        // full trace: only the empty completion remains
        let c = state.completion_posterior();
        assert_eq!(c.len(), 1);
        assert!(c.keys().next().unwrap().is_empty());
        assert!((c.values().next().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn illegal_update_is_rejected() {
        let cells = vec![Cell::Directional(Direction::Right), Cell::Object('G'), Cell::Free, Cell::Free];
        let moves: MoveSet = Direction::ALL.into_iter().collect();
        let s = GridScenario::new(2, 2, cells, Coord::new(0, 0), moves, true).unwrap();
        let g = AgentModel::new("g", 'G', 1.0).unwrap();
        let h = HypothesisSet::new(&s, vec![g], vec![0.9], 0.1).unwrap();
        let obs = Observer::new(&s, &h).unwrap();
        let state = obs.initial().unwrap();
        assert!(matches!(state.update(Direction::Down), Err(Error::InvalidAction { step: 0, .. })));
        let right = state.update(Direction::Right).unwrap();
        assert!(matches!(right.update(Direction::Left), Err(Error::InvalidAction { step: 1, .. })));
    }

    #[test]
    fn completions_sum_to_one() {
        let s = square();
        let h = hs(&s);
        let obs = Observer::new(&s, &h).unwrap();
        for p in ["", "R", "D"] {
            let st = obs.observe(&Trace::parse(s.start(), p).unwrap()).unwrap();
            let total: f64 = st.completion_posterior().values().sum();
            assert!((total - 1.0).abs() < 1e-12, "{p}: {total}");
            for (suffix, prob) in st.completion_posterior() {
                assert!((st.completion_probability(&suffix) - prob).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn physically_invalid_prefix_has_no_evidence() {
        let s = square();
        let h = hs(&s);
        let bad = Trace::parse(s.start(), "U").unwrap();
        assert!(matches!(posterior_models(&s, &h, &bad), Err(Error::ZeroEvidence)));
    }
}
