//! Exact Bayesian observer model for interpretable agent behavior on grid
//! worlds.
//!
//! An observer holds a set of explicit hypotheses about an agent (goal,
//! step cost, rationality) plus a catch-all model `M0` that spreads equal
//! probability over every feasible behavior. Observing a behavior prefix
//! updates the posterior over hypotheses and over completions, and the
//! interpretability scores are read off that posterior:
//!
//! - explicability: posterior mass outside `M0`
//! - legibility: mass on hypotheses sharing the true value of a parameter
//! - predictability: predictive probability of the intended completion
//! - deception and obfuscation: minus the true model's posterior, and the
//!   posterior entropy
//!
//! All probabilities are computed exactly by enumerating the behavior
//! universes of each hypothesis.

pub mod enumerate;
pub mod error;
pub mod format;
pub mod likelihood;
pub mod observer;
pub mod planner;
pub mod scenario;
pub mod scores;

pub use enumerate::{
    completions, enumerate_goal_traces, enumerate_maximal_traces, optimal_traces, trace_cost, Behavior, BehaviorSet,
    Enumerator, Provenance,
};
pub use error::{Error, Result};
pub use format::{parse_scenario, serialize_scenario};
pub use likelihood::{likelihood_full, likelihood_prefix, LikelihoodTable};
pub use observer::{posterior_completions, posterior_models, Observer, ObserverState};
pub use planner::{plan, Aggregation, Objective, Plan, Weights};
pub use scenario::{
    AgentModel, Cell, Coord, Direction, GridScenario, HypothesisSet, LikelihoodKind, ModelRef, MoveSet, ParamValue,
    Parameter, ParameterSelector, Trace,
};
pub use scores::{
    deception, explicability, explicability_complete, legacy_explicability, legibility, obfuscation, predictability,
    ScoreReport, ScoreTargets,
};
