//! Interpretability and adversarial scores read off an observer state.
//!
//! | score          | value                                         |
//! |----------------|-----------------------------------------------|
//! | explicability  | posterior mass on the explicit models         |
//! | legibility     | mass on explicit models sharing the true value of a parameter |
//! | predictability | predictive probability of the intended completion |
//! | deception      | minus the posterior of the true model         |
//! | obfuscation    | entropy of the model posterior, in nats       |
//!
//! All proportionality constants are 1.

use crate::enumerate::{enumerate_goal_traces, optimal_subset, trace_cost};
use crate::error::Result;
use crate::observer::{Observer, ObserverState};
use crate::scenario::{AgentModel, GridScenario, HypothesisSet, ModelRef, ParameterSelector, Trace};

pub fn explicability_of(state: &ObserverState<'_>) -> f64 {
    let post = state.model_posterior();
    post[..post.len() - 1].iter().fold(0.0, |a, b| a + b)
}

pub fn legibility_of(state: &ObserverState<'_>, selector: &ParameterSelector) -> f64 {
    state
        .hypotheses()
        .models()
        .iter()
        .zip(state.model_posterior())
        .filter(|(m, _)| selector.matches(m))
        .fold(0.0, |a, (_, p)| a + p)
}

/// `intended` is the agent's remaining behavior, starting where the
/// observed prefix ends.
pub fn predictability_of(state: &ObserverState<'_>, intended: &Trace) -> f64 {
    state.completion_probability(intended)
}

/// In [-1, 0]; 0 when the true model is not among the hypotheses.
pub fn deception_of(state: &ObserverState<'_>, true_model_id: &str) -> f64 {
    match state.hypotheses().position(true_model_id) {
        Some(i) if state.posterior(ModelRef::Explicit(i)) > 0.0 => -state.posterior(ModelRef::Explicit(i)),
        _ => 0.0,
    }
}

pub fn obfuscation_of(state: &ObserverState<'_>) -> f64 {
    let h = state.model_posterior().iter().filter(|p| **p > 0.0).fold(0.0, |a, p| a - p * p.ln());
    if h > 0.0 {
        h
    } else {
        0.0
    }
}

pub fn explicability(scenario: &GridScenario, hs: &HypothesisSet, prefix: &Trace) -> Result<f64> {
    Ok(explicability_of(&Observer::new(scenario, hs)?.observe(prefix)?))
}

/// Explicability of `trace` judged as a complete behavior.
pub fn explicability_complete(scenario: &GridScenario, hs: &HypothesisSet, trace: &Trace) -> Result<f64> {
    Ok(explicability_of(&Observer::new(scenario, hs)?.observe_complete(trace)?))
}

pub fn legibility(scenario: &GridScenario, hs: &HypothesisSet, prefix: &Trace, sel: &ParameterSelector) -> Result<f64> {
    Ok(legibility_of(&Observer::new(scenario, hs)?.observe(prefix)?, sel))
}

pub fn predictability(scenario: &GridScenario, hs: &HypothesisSet, prefix: &Trace, intended: &Trace) -> Result<f64> {
    Ok(predictability_of(&Observer::new(scenario, hs)?.observe(prefix)?, intended))
}

pub fn deception(scenario: &GridScenario, hs: &HypothesisSet, prefix: &Trace, true_model_id: &str) -> Result<f64> {
    Ok(deception_of(&Observer::new(scenario, hs)?.observe(prefix)?, true_model_id))
}

pub fn obfuscation(scenario: &GridScenario, hs: &HypothesisSet, prefix: &Trace) -> Result<f64> {
    Ok(obfuscation_of(&Observer::new(scenario, hs)?.observe(prefix)?))
}

/// Unnormalized cost-distance score `exp(-beta * (C(trace) - C(optimal)))`
/// used by earlier single-model formulations. `beta = inf` gives the binary
/// optimal / not-optimal regime.
pub fn legacy_explicability(scenario: &GridScenario, model: &AgentModel, trace: &Trace, beta: f64) -> Result<f64> {
    let best = optimal_subset(enumerate_goal_traces(scenario, model)?, model)?;
    let gap = trace_cost(model, trace) - trace_cost(model, &best.traces()[0]);
    if gap <= 0.0 {
        return Ok(1.0);
    }
    Ok((-beta * gap).exp())
}

/// What a [`ScoreReport`] is computed against.
#[derive(Debug, Clone, Default)]
pub struct ScoreTargets {
    pub selector: Option<ParameterSelector>,
    /// The full behavior the agent intends; its remainder after the prefix
    /// is the intended completion.
    pub intended: Option<Trace>,
    pub true_model: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub prefix_length: usize,
    pub explicability: f64,
    pub legibility: Option<f64>,
    pub predictability: Option<f64>,
    pub deception: Option<f64>,
    pub obfuscation: f64,
}

impl ScoreReport {
    pub fn new(state: &ObserverState<'_>, targets: &ScoreTargets) -> Self {
        let prefix = state.prefix();
        let predictability = targets.intended.as_ref().map(|full| {
            if prefix.is_prefix_of(full) && prefix.len() <= full.len() {
                predictability_of(state, &full.split_at(prefix.len()).1)
            } else {
                0.0
            }
        });
        ScoreReport {
            prefix_length: prefix.len(),
            explicability: explicability_of(state),
            legibility: targets.selector.as_ref().map(|s| legibility_of(state, s)),
            predictability,
            deception: targets.true_model.as_deref().map(|id| deception_of(state, id)),
            obfuscation: obfuscation_of(state),
        }
    }
}

/// Reports for every prefix of `trace`, lengths 0 through `trace.len()`.
/// With `complete`, the last report judges `trace` as the whole behavior
/// rather than as a prefix.
pub fn score_trajectory(
    observer: &Observer,
    trace: &Trace,
    targets: &ScoreTargets,
    complete: bool,
) -> Result<Vec<ScoreReport>> {
    let mut state = observer.observe(&trace.prefix(0))?;
    let mut out = Vec::with_capacity(trace.len() + 1);
    for &d in &trace.actions {
        out.push(ScoreReport::new(&state, targets));
        state = state.update(d)?;
    }
    if complete {
        state = observer.observe_complete(trace)?;
    }
    out.push(ScoreReport::new(&state, targets));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{Cell, Coord, Direction, MoveSet};

    /// Two goals reachable only through disjoint branches of a fork.
    fn fork() -> GridScenario {
        #[rustfmt::skip]
        let cells = vec![
            Cell::Free, Cell::Free, Cell::Free,
            Cell::Object('A'), Cell::Wall, Cell::Object('B'),
        ];
        let moves: MoveSet = [Direction::Down, Direction::Left, Direction::Right].into_iter().collect();
        GridScenario::new(3, 2, cells, Coord::new(1, 0), moves, true).unwrap()
    }

    fn models() -> Vec<AgentModel> {
        vec![AgentModel::new("a", 'A', f64::INFINITY).unwrap(), AgentModel::new("b", 'B', f64::INFINITY).unwrap()]
    }

    #[test]
    fn empty_prefix_scores_follow_priors() {
        let s = fork();
        let hs = HypothesisSet::new(&s, models(), vec![0.4, 0.5], 0.1).unwrap();
        let p = Trace::empty(s.start());
        assert!((explicability(&s, &hs, &p).unwrap() - 0.9).abs() < 1e-12);
        assert!((deception(&s, &hs, &p, "a").unwrap() + 0.4).abs() < 1e-12);
        assert_eq!(legibility(&s, &hs, &p, &ParameterSelector::goal('Z')).unwrap(), 0.0);
        let all = ParameterSelector::beta(f64::INFINITY);
        assert!((legibility(&s, &hs, &p, &all).unwrap() - explicability(&s, &hs, &p).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn absent_true_model_is_maximally_deceptive() {
        let s = fork();
        let hs = HypothesisSet::new(&s, models(), vec![0.45, 0.45], 0.1).unwrap();
        for p in ["", "L", "LD"] {
            let d = deception(&s, &hs, &Trace::parse(s.start(), p).unwrap(), "elsewhere").unwrap();
            assert_eq!(d, 0.0);
            assert!(d.is_sign_positive());
        }
    }

    #[test]
    fn obfuscation_limits() {
        let s = fork();
        // symmetric start: equal mass on both goals, tiny M0 share
        let hs = HypothesisSet::new(&s, models(), vec![0.5 - 5e-7, 0.5 - 5e-7], 1e-6).unwrap();
        let h = obfuscation(&s, &hs, &Trace::empty(s.start())).unwrap();
        assert!((h - 2f64.ln()).abs() < 0.05);
        assert!(h <= 3f64.ln());
        // a full trace to A rules B out; single-model set puts all mass on A
        let single = HypothesisSet::legacy(&s, vec![models().remove(0)], vec![1.0], 0.0).unwrap();
        assert_eq!(obfuscation(&s, &single, &Trace::parse(s.start(), "LD").unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn predictability_of_forced_completion() {
        let s = fork();
        let hs = HypothesisSet::new(&s, models(), vec![0.45, 0.45], 0.1).unwrap();
        let prefix = Trace::parse(s.start(), "L").unwrap();
        let rest = Trace::parse(prefix.terminal(), "D").unwrap();
        assert!((predictability(&s, &hs, &prefix, &rest).unwrap() - 1.0).abs() < 1e-12);
        let nowhere = Trace::parse(prefix.terminal(), "R").unwrap();
        assert_eq!(predictability(&s, &hs, &prefix, &nowhere).unwrap(), 0.0);
    }

    #[test]
    fn legacy_cost_distance() {
        let cells = vec![Cell::Free; 8].into_iter().chain([Cell::Object('G')]).collect();
        let moves: MoveSet = Direction::ALL.into_iter().collect();
        let s = GridScenario::new(3, 3, cells, Coord::new(0, 0), moves, true).unwrap();
        let g = AgentModel::new("g", 'G', 1.0).unwrap();
        let opt = Trace::parse(s.start(), "RRDD").unwrap();
        let long = Trace::parse(s.start(), "DDRURD").unwrap();
        assert!(s.validate_trace(&long));
        assert_eq!(legacy_explicability(&s, &g, &opt, 1.0).unwrap(), 1.0);
        assert!(
            (legacy_explicability(&s, &g, &Trace::parse(s.start(), "RDLDRR").unwrap(), 1.0).unwrap() - (-2f64).exp())
                .abs()
                < 1e-15
        );
        assert_eq!(legacy_explicability(&s, &g, &long, f64::INFINITY).unwrap(), 0.0);
    }
}
