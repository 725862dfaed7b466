use thiserror::Error;

use crate::scenario::Coord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid hypothesis set: {0}")]
    InvalidHypothesis(String),

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    /// Completion does not start where the prefix ends.
    #[error("junction mismatch: prefix ends at {prefix_end}, completion starts at {completion_start}")]
    Junction { prefix_end: Coord, completion_start: Coord },

    #[error("no plan reaches the goal of model `{0}`")]
    NoPlan(String),

    #[error("enumeration exceeded the cap of {cap} explored partial traces")]
    Explosion { cap: usize },

    #[error("behavior universe of `{0}` is empty")]
    EmptyUniverse(String),

    #[error("observed prefix has zero likelihood under every hypothesis")]
    ZeroEvidence,

    #[error("illegal action at step {step}: {reason}")]
    InvalidAction { step: usize, reason: String },

    #[error("invalid objective: {0}")]
    InvalidObjective(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("line {line}: {reason}")]
    Invariant { line: usize, reason: String },
}

impl Error {
    /// Short machine-readable tag, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidScenario(_) => "invalid-scenario",
            Error::InvalidModel(_) => "invalid-model",
            Error::InvalidHypothesis(_) => "invalid-hypothesis",
            Error::InvalidTrace(_) => "invalid-trace",
            Error::Junction { .. } => "junction",
            Error::NoPlan(_) => "no-plan",
            Error::Explosion { .. } => "explosion",
            Error::EmptyUniverse(_) => "empty-universe",
            Error::ZeroEvidence => "zero-evidence",
            Error::InvalidAction { .. } => "invalid-action",
            Error::InvalidObjective(_) => "invalid-objective",
            Error::Parse { .. } => "parse",
            Error::Invariant { .. } => "invariant",
        }
    }
}
