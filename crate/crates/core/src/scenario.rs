//! Grid worlds, agent models, hypothesis sets and behavior traces.
//!
//! Everything here is immutable once constructed. Constructors validate the
//! invariants of the setting so that downstream code can rely on them.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest grid supported; visited sets are tracked in a `u128`.
pub const MAX_CELLS: usize = 128;

/// Movement direction. The declaration order matches the order of the
/// action letters (`D < L < R < U`), so sorting action sequences sorts them
/// lexicographically by their action string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Down,
    Left,
    Right,
    Up,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Down, Direction::Left, Direction::Right, Direction::Up];

    pub fn letter(self) -> char {
        match self {
            Direction::Down => 'D',
            Direction::Left => 'L',
            Direction::Right => 'R',
            Direction::Up => 'U',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'D' => Some(Direction::Down),
            'L' => Some(Direction::Left),
            'R' => Some(Direction::Right),
            'U' => Some(Direction::Up),
            _ => None,
        }
    }

    /// Lowercase name used in the scenario format.
    pub fn name(self) -> &'static str {
        match self {
            Direction::Down => "down",
            Direction::Left => "left",
            Direction::Right => "right",
            Direction::Up => "up",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Direction::ALL.into_iter().find(|d| d.name() == s)
    }

    /// Arrow glyph of a directional cell.
    pub fn glyph(self) -> char {
        match self {
            Direction::Down => 'v',
            Direction::Left => '<',
            Direction::Right => '>',
            Direction::Up => '^',
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Set of permitted movement directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MoveSet(u8);

impl MoveSet {
    pub fn contains(self, d: Direction) -> bool {
        self.0 & d.bit() != 0
    }

    pub fn insert(&mut self, d: Direction) {
        self.0 |= d.bit();
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Direction> {
        Direction::ALL.into_iter().filter(move |d| self.contains(*d))
    }
}

impl FromIterator<Direction> for MoveSet {
    fn from_iter<I: IntoIterator<Item = Direction>>(iter: I) -> Self {
        let mut set = MoveSet::default();
        for d in iter {
            set.insert(d);
        }
        set
    }
}

/// Grid coordinate. Row 0 is the top row and `Down` increments the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub col: usize,
    pub row: usize,
}

impl Coord {
    pub const fn new(col: usize, row: usize) -> Self {
        Coord { col, row }
    }

    /// Neighbour in direction `d`, ignoring the upper grid bounds.
    pub fn offset(self, d: Direction) -> Option<Coord> {
        match d {
            Direction::Down => Some(Coord::new(self.col, self.row + 1)),
            Direction::Up => self.row.checked_sub(1).map(|row| Coord::new(self.col, row)),
            Direction::Left => self.col.checked_sub(1).map(|col| Coord::new(col, self.row)),
            Direction::Right => Some(Coord::new(self.col + 1, self.row)),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Free,
    Wall,
    /// May be entered from anywhere but only exited in this direction.
    Directional(Direction),
    /// Named object, traversable. Labels are single uppercase letters.
    Object(char),
}

impl Cell {
    pub fn glyph(self) -> char {
        match self {
            Cell::Free => '.',
            Cell::Wall => '#',
            Cell::Directional(d) => d.glyph(),
            Cell::Object(c) => c,
        }
    }

    pub fn from_glyph(c: char) -> Option<Self> {
        match c {
            '.' => Some(Cell::Free),
            '#' => Some(Cell::Wall),
            'v' => Some(Cell::Directional(Direction::Down)),
            '<' => Some(Cell::Directional(Direction::Left)),
            '>' => Some(Cell::Directional(Direction::Right)),
            '^' => Some(Cell::Directional(Direction::Up)),
            'A'..='Z' => Some(Cell::Object(c)),
            _ => None,
        }
    }
}

/// The physical world: cells, start position and movement rules.
#[derive(Debug, Clone, PartialEq)]
pub struct GridScenario {
    width: usize,
    height: usize,
    cells: Vec<Cell>,
    start: Coord,
    allowed_moves: MoveSet,
    no_revisit: bool,
}

impl GridScenario {
    /// `cells` is row-major, `width * height` long.
    pub fn new(
        width: usize,
        height: usize,
        cells: Vec<Cell>,
        start: Coord,
        allowed_moves: MoveSet,
        no_revisit: bool,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidScenario("grid dimensions must be positive".into()));
        }
        if width * height > MAX_CELLS {
            return Err(Error::InvalidScenario(format!(
                "grid has {} cells, at most {MAX_CELLS} are supported",
                width * height
            )));
        }
        if cells.len() != width * height {
            return Err(Error::InvalidScenario(format!("expected {} cells, got {}", width * height, cells.len())));
        }
        if allowed_moves.is_empty() {
            return Err(Error::InvalidScenario("no movement direction is allowed".into()));
        }
        let mut labels = HashSet::new();
        for cell in &cells {
            if let Cell::Object(label) = cell {
                if !label.is_ascii_uppercase() {
                    return Err(Error::InvalidScenario(format!("invalid object label `{label}`")));
                }
                if !labels.insert(*label) {
                    return Err(Error::InvalidScenario(format!("duplicate object label `{label}`")));
                }
            }
        }
        let scenario = GridScenario { width, height, cells, start, allowed_moves, no_revisit };
        match scenario.cell(start) {
            None => Err(Error::InvalidScenario(format!("start {start} is out of bounds"))),
            Some(Cell::Wall) => Err(Error::InvalidScenario(format!("start {start} is a wall"))),
            Some(_) => Ok(scenario),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn start(&self) -> Coord {
        self.start
    }

    pub fn allowed_moves(&self) -> MoveSet {
        self.allowed_moves
    }

    pub fn no_revisit(&self) -> bool {
        self.no_revisit
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn in_bounds(&self, c: Coord) -> bool {
        c.col < self.width && c.row < self.height
    }

    pub fn index(&self, c: Coord) -> usize {
        c.row * self.width + c.col
    }

    pub fn cell(&self, c: Coord) -> Option<Cell> {
        self.in_bounds(c).then(|| self.cells[self.index(c)])
    }

    /// Location of the object with the given label.
    pub fn object(&self, label: char) -> Option<Coord> {
        self.cells.iter().position(|c| *c == Cell::Object(label)).map(|i| Coord::new(i % self.width, i / self.width))
    }

    /// Copy of this scenario with one cell replaced.
    pub fn with_cell(&self, at: Coord, cell: Cell) -> Result<Self> {
        if !self.in_bounds(at) {
            return Err(Error::InvalidScenario(format!("{at} is out of bounds")));
        }
        let mut cells = self.cells.clone();
        cells[self.index(at)] = cell;
        GridScenario::new(self.width, self.height, cells, self.start, self.allowed_moves, self.no_revisit)
    }

    /// Single-step physics, without the revisit rule: the move must be
    /// allowed, respect a directional cell's exit, and land in bounds on a
    /// non-wall cell.
    pub fn step(&self, from: Coord, d: Direction) -> Option<Coord> {
        if !self.allowed_moves.contains(d) {
            return None;
        }
        match self.cell(from)? {
            Cell::Wall => return None,
            Cell::Directional(exit) if exit != d => return None,
            _ => {}
        }
        let to = from.offset(d)?;
        match self.cell(to)? {
            Cell::Wall => None,
            _ => Some(to),
        }
    }

    pub(crate) fn bit(&self, c: Coord) -> u128 {
        1u128 << self.index(c)
    }

    /// Physical validity of a trace under this scenario's rules.
    pub fn validate_trace(&self, trace: &Trace) -> bool {
        self.check_trace(trace).is_ok()
    }

    /// Like [`validate_trace`](Self::validate_trace) but reports the first
    /// offending step.
    pub fn check_trace(&self, trace: &Trace) -> Result<()> {
        match self.cell(trace.start) {
            None | Some(Cell::Wall) => {
                return Err(Error::InvalidTrace(format!("start {} is not a free cell", trace.start)))
            }
            Some(_) => {}
        }
        let mut visited = self.bit(trace.start);
        let mut at = trace.start;
        for (step, &d) in trace.actions.iter().enumerate() {
            let next = self
                .step(at, d)
                .ok_or_else(|| Error::InvalidAction { step, reason: format!("cannot move {} from {at}", d.name()) })?;
            if self.no_revisit && visited & self.bit(next) != 0 {
                return Err(Error::InvalidAction { step, reason: format!("revisits {next}") });
            }
            visited |= self.bit(next);
            at = next;
        }
        Ok(())
    }

    /// Joins a prefix with a completion, re-checking validity across the
    /// junction (revisits are checked over the whole result).
    pub fn concat(&self, prefix: &Trace, completion: &Trace) -> Result<Trace> {
        let joined = prefix.concat(completion)?;
        self.check_trace(&joined)?;
        Ok(joined)
    }
}

/// A behavior: a start state and a sequence of actions. The visited states
/// are implied by the actions; equality is structural.
///
/// Prefixes, completions (suffixes) and full traces all use this type. A
/// completion starts at the terminal state of its prefix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trace {
    pub start: Coord,
    pub actions: Vec<Direction>,
}

impl Trace {
    pub fn new(start: Coord, actions: Vec<Direction>) -> Self {
        Trace { start, actions }
    }

    pub fn empty(start: Coord) -> Self {
        Trace { start, actions: Vec::new() }
    }

    /// Parses an action string such as `RRDL`.
    pub fn parse(start: Coord, path: &str) -> Result<Self> {
        let actions = path
            .chars()
            .enumerate()
            .map(|(step, c)| {
                Direction::from_letter(c)
                    .ok_or_else(|| Error::InvalidAction { step, reason: format!("`{c}` is not one of U, D, L, R") })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Trace { start, actions })
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    /// Visited states, start and terminal included (`len() + 1` entries).
    /// Moves off the top or left edge saturate; such traces never validate.
    pub fn states(&self) -> Vec<Coord> {
        let mut out = Vec::with_capacity(self.actions.len() + 1);
        let mut at = self.start;
        out.push(at);
        for &d in &self.actions {
            at = at.offset(d).unwrap_or(at);
            out.push(at);
        }
        out
    }

    pub fn terminal(&self) -> Coord {
        *self.states().last().expect("states is never empty")
    }

    /// (state, action) pairs.
    pub fn steps(&self) -> impl Iterator<Item = (Coord, Direction)> + '_ {
        self.states().into_iter().zip(self.actions.iter().copied())
    }

    pub fn action_string(&self) -> String {
        self.actions.iter().map(|d| d.letter()).collect()
    }

    /// Splits into the prefix of `k` actions and the remaining completion.
    pub fn split_at(&self, k: usize) -> (Trace, Trace) {
        let k = k.min(self.actions.len());
        let mid = self.states()[k];
        (Trace::new(self.start, self.actions[..k].to_vec()), Trace::new(mid, self.actions[k..].to_vec()))
    }

    /// The first `k` actions.
    pub fn prefix(&self, k: usize) -> Trace {
        Trace::new(self.start, self.actions[..k.min(self.actions.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Trace) -> bool {
        self.start == other.start && other.actions.starts_with(&self.actions)
    }

    /// Structural concatenation; see [`GridScenario::concat`] for the
    /// validity-checking variant.
    pub fn concat(&self, completion: &Trace) -> Result<Trace> {
        let end = self.terminal();
        if completion.start != end {
            return Err(Error::Junction { prefix_end: end, completion_start: completion.start });
        }
        let mut actions = self.actions.clone();
        actions.extend_from_slice(&completion.actions);
        Ok(Trace::new(self.start, actions))
    }

    pub fn extended(&self, d: Direction) -> Trace {
        let mut actions = self.actions.clone();
        actions.push(d);
        Trace::new(self.start, actions)
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.action_string())
    }
}

/// Likelihood regime, determined by the rationality parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LikelihoodKind {
    /// beta = +inf: uniform over optimal traces.
    Normative,
    /// 0 < beta < inf: exp(-beta * cost), normalized.
    Boltzmann,
    /// beta = 0: uniform over the behavior universe.
    Uniform,
}

/// One hypothesis about the agent: its goal, step cost and rationality.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentModel {
    id: String,
    goal: char,
    step_cost: f64,
    beta: f64,
}

impl AgentModel {
    pub fn new(id: impl Into<String>, goal: char, beta: f64) -> Result<Self> {
        Self::with_step_cost(id, goal, beta, 1.0)
    }

    pub fn with_step_cost(id: impl Into<String>, goal: char, beta: f64, step_cost: f64) -> Result<Self> {
        let id = id.into();
        if id.is_empty() || id.chars().any(|c| c.is_whitespace() || c == ',') {
            return Err(Error::InvalidModel(format!("invalid model id `{id}`")));
        }
        if !goal.is_ascii_uppercase() {
            return Err(Error::InvalidModel(format!("goal `{goal}` is not an object label")));
        }
        if beta.is_nan() || beta < 0.0 {
            return Err(Error::InvalidModel(format!("beta must be non-negative, got {beta}")));
        }
        if !(step_cost.is_finite() && step_cost > 0.0) {
            return Err(Error::InvalidModel(format!("step cost must be positive, got {step_cost}")));
        }
        Ok(AgentModel { id, goal, step_cost, beta })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn goal(&self) -> char {
        self.goal
    }

    pub fn step_cost(&self) -> f64 {
        self.step_cost
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn kind(&self) -> LikelihoodKind {
        if self.beta == f64::INFINITY {
            LikelihoodKind::Normative
        } else if self.beta == 0.0 {
            LikelihoodKind::Uniform
        } else {
            LikelihoodKind::Boltzmann
        }
    }

    pub fn goal_cell(&self, scenario: &GridScenario) -> Result<Coord> {
        scenario
            .object(self.goal)
            .ok_or_else(|| Error::InvalidModel(format!("goal `{}` of `{}` is not in the grid", self.goal, self.id)))
    }

    /// Same model with a different rationality parameter.
    pub fn with_beta(&self, beta: f64) -> Result<Self> {
        Self::with_step_cost(self.id.clone(), self.goal, beta, self.step_cost)
    }
}

/// Which hypothesis of a [`HypothesisSet`] is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelRef {
    Explicit(usize),
    /// The goal-free, high-entropy "something else" model.
    M0,
}

/// Observer's hypothesis space: explicit models plus the distinguished M0
/// model and a prior over all of them.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisSet {
    models: Vec<AgentModel>,
    priors: Vec<f64>,
    m0_prior: f64,
    legacy: bool,
}

pub const PRIOR_TOLERANCE: f64 = 1e-12;

impl HypothesisSet {
    /// `priors` are aligned with `models`; `m0_prior` must be positive.
    pub fn new(scenario: &GridScenario, models: Vec<AgentModel>, priors: Vec<f64>, m0_prior: f64) -> Result<Self> {
        Self::build(scenario, models, priors, m0_prior, false)
    }

    /// Allows a zero M0 prior, which reproduces the classical setting where
    /// the observer is certain the agent is one of the explicit models.
    pub fn legacy(scenario: &GridScenario, models: Vec<AgentModel>, priors: Vec<f64>, m0_prior: f64) -> Result<Self> {
        Self::build(scenario, models, priors, m0_prior, true)
    }

    fn build(
        scenario: &GridScenario,
        models: Vec<AgentModel>,
        priors: Vec<f64>,
        m0_prior: f64,
        legacy: bool,
    ) -> Result<Self> {
        if priors.len() != models.len() {
            return Err(Error::InvalidHypothesis(format!("{} priors given for {} models", priors.len(), models.len())));
        }
        if let Some(p) = priors.iter().chain([&m0_prior]).find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::InvalidHypothesis(format!("prior {p} is not a probability")));
        }
        let total: f64 = priors.iter().sum::<f64>() + m0_prior;
        if (total - 1.0).abs() > PRIOR_TOLERANCE {
            return Err(Error::InvalidHypothesis(format!("priors sum to {total}, expected 1")));
        }
        if m0_prior == 0.0 && !legacy {
            return Err(Error::InvalidHypothesis("M0 prior must be strictly positive".into()));
        }
        let mut ids = HashSet::new();
        for m in &models {
            if !ids.insert(m.id()) {
                return Err(Error::InvalidHypothesis(format!("duplicate model id `{}`", m.id())));
            }
            if m.id() == "m0" {
                return Err(Error::InvalidHypothesis("`m0` is reserved".into()));
            }
            m.goal_cell(scenario)?;
        }
        Ok(HypothesisSet { models, priors, m0_prior, legacy })
    }

    pub fn models(&self) -> &[AgentModel] {
        &self.models
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn m0_prior(&self) -> f64 {
        self.m0_prior
    }

    pub fn is_legacy(&self) -> bool {
        self.legacy
    }

    /// Number of hypotheses including M0.
    pub fn len(&self) -> usize {
        self.models.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Prior vector aligned with [`refs`](Self::refs): explicit models first, M0 last.
    pub fn prior_vector(&self) -> Vec<f64> {
        let mut v = self.priors.clone();
        v.push(self.m0_prior);
        v
    }

    pub fn refs(&self) -> impl Iterator<Item = ModelRef> {
        (0..self.models.len()).map(ModelRef::Explicit).chain(std::iter::once(ModelRef::M0))
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.models.iter().position(|m| m.id() == id)
    }

    pub fn model(&self, id: &str) -> Option<&AgentModel> {
        self.models.iter().find(|m| m.id() == id)
    }
}

/// Model parameter a legibility score is taken with respect to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamValue {
    Goal(char),
    Beta(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameter {
    Goal,
    Beta,
}

impl Parameter {
    pub fn extract(self, model: &AgentModel) -> ParamValue {
        match self {
            Parameter::Goal => ParamValue::Goal(model.goal()),
            Parameter::Beta => ParamValue::Beta(model.beta()),
        }
    }
}

/// A projection of agent models together with the true model's value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterSelector {
    pub parameter: Parameter,
    pub target: ParamValue,
}

impl ParameterSelector {
    pub fn goal(label: char) -> Self {
        ParameterSelector { parameter: Parameter::Goal, target: ParamValue::Goal(label) }
    }

    pub fn beta(beta: f64) -> Self {
        ParameterSelector { parameter: Parameter::Beta, target: ParamValue::Beta(beta) }
    }

    /// Selector for `parameter` targeting the value it takes in `true_model`.
    pub fn of(parameter: Parameter, true_model: &AgentModel) -> Self {
        ParameterSelector { parameter, target: parameter.extract(true_model) }
    }

    pub fn matches(&self, model: &AgentModel) -> bool {
        self.parameter.extract(model) == self.target
    }

    /// Short label, e.g. `C` for a goal or `beta2` for a rationality value.
    pub fn label(&self) -> String {
        match self.target {
            ParamValue::Goal(c) => c.to_string(),
            ParamValue::Beta(b) => format!("beta{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn corridor() -> GridScenario {
        GridScenario::new(
            3,
            1,
            vec![Cell::Free, Cell::Free, Cell::Object('G')],
            Coord::new(0, 0),
            [Direction::Right].into_iter().collect(),
            true,
        )
        .unwrap()
    }

    #[test]
    fn corridor_trace_is_valid() {
        let s = corridor();
        let t = Trace::parse(s.start(), "RR").unwrap();
        assert!(s.validate_trace(&t));
        assert_eq!(t.terminal(), Coord::new(2, 0));
        assert!(!s.validate_trace(&Trace::parse(s.start(), "RRR").unwrap()));
        assert!(!s.validate_trace(&Trace::parse(s.start(), "L").unwrap()));
    }

    #[test]
    fn revisit_is_rejected() {
        let moves = [Direction::Left, Direction::Right].into_iter().collect();
        let s = GridScenario::new(2, 1, vec![Cell::Free; 2], Coord::new(0, 0), moves, true).unwrap();
        assert!(!s.validate_trace(&Trace::parse(s.start(), "RL").unwrap()));
        let open = GridScenario::new(2, 1, vec![Cell::Free; 2], Coord::new(0, 0), moves, false).unwrap();
        assert!(open.validate_trace(&Trace::parse(s.start(), "RL").unwrap()));
    }

    #[test]
    fn directional_cell_only_exits_its_way() {
        let moves = Direction::ALL.into_iter().collect();
        let cells = vec![Cell::Directional(Direction::Right), Cell::Free, Cell::Free, Cell::Free];
        let s = GridScenario::new(2, 2, cells, Coord::new(0, 0), moves, true).unwrap();
        assert!(!s.validate_trace(&Trace::parse(s.start(), "D").unwrap()));
        assert!(s.validate_trace(&Trace::parse(s.start(), "RD").unwrap()));
        // entering a directional cell from any side is fine
        let t = Trace::new(Coord::new(0, 1), vec![Direction::Up, Direction::Right]);
        assert!(s.validate_trace(&t));
    }

    #[test]
    fn concat_checks_the_junction() {
        let s = corridor();
        let empty = Trace::empty(s.start());
        let full = Trace::parse(s.start(), "RR").unwrap();
        assert_eq!(s.concat(&empty, &full).unwrap(), full);
        let r = Trace::parse(s.start(), "R").unwrap();
        let rest = Trace::parse(Coord::new(1, 0), "R").unwrap();
        assert_eq!(s.concat(&r, &rest).unwrap(), full);

        let p = Trace::new(Coord::new(0, 0), vec![Direction::Right, Direction::Right]);
        let c = Trace::empty(Coord::new(0, 0));
        assert!(matches!(p.concat(&c), Err(Error::Junction { .. })));
    }

    #[test]
    fn concat_rechecks_revisits_across_the_junction() {
        let moves = [Direction::Left, Direction::Right].into_iter().collect();
        let s = GridScenario::new(3, 1, vec![Cell::Free; 3], Coord::new(0, 0), moves, true).unwrap();
        let p = Trace::parse(s.start(), "R").unwrap();
        let c = Trace::parse(Coord::new(1, 0), "L").unwrap();
        assert!(s.validate_trace(&p) && s.validate_trace(&c));
        assert!(s.concat(&p, &c).is_err());
    }

    #[test]
    fn scenario_invariants() {
        let moves: MoveSet = [Direction::Right].into_iter().collect();
        assert!(GridScenario::new(1, 1, vec![Cell::Wall], Coord::new(0, 0), moves, true).is_err());
        assert!(GridScenario::new(1, 1, vec![Cell::Free], Coord::new(1, 0), moves, true).is_err());
        assert!(GridScenario::new(1, 1, vec![Cell::Free], Coord::new(0, 0), MoveSet::default(), true).is_err());
        let dup = vec![Cell::Object('A'), Cell::Object('A')];
        assert!(GridScenario::new(2, 1, dup, Coord::new(0, 0), moves, true).is_err());
    }

    #[test]
    fn hypothesis_priors_validated() {
        let s = corridor();
        let m = AgentModel::new("g", 'G', 1.0).unwrap();
        assert!(HypothesisSet::new(&s, vec![m.clone()], vec![0.9], 0.1).is_ok());
        assert!(HypothesisSet::new(&s, vec![m.clone()], vec![0.8], 0.1).is_err());
        assert!(HypothesisSet::new(&s, vec![m.clone()], vec![1.1], -0.1).is_err());
        assert!(HypothesisSet::new(&s, vec![m.clone()], vec![1.0], 0.0).is_err());
        assert!(HypothesisSet::legacy(&s, vec![m.clone()], vec![1.0], 0.0).is_ok());
        let missing = AgentModel::new("x", 'X', 1.0).unwrap();
        assert!(HypothesisSet::new(&s, vec![missing], vec![0.9], 0.1).is_err());
    }

    #[test]
    fn likelihood_kind_follows_beta() {
        assert_eq!(AgentModel::new("a", 'A', f64::INFINITY).unwrap().kind(), LikelihoodKind::Normative);
        assert_eq!(AgentModel::new("a", 'A', 0.0).unwrap().kind(), LikelihoodKind::Uniform);
        assert_eq!(AgentModel::new("a", 'A', 0.5).unwrap().kind(), LikelihoodKind::Boltzmann);
        assert!(AgentModel::new("a", 'A', -1.0).is_err());
        assert!(AgentModel::with_step_cost("a", 'A', 1.0, 0.0).is_err());
    }

    #[test]
    fn action_order_is_lexicographic() {
        let mut v = vec!["RD", "DR", "D", "U", "LR"]
            .into_iter()
            .map(|p| Trace::parse(Coord::new(0, 0), p).unwrap())
            .collect::<Vec<_>>();
        v.sort();
        let strings: Vec<_> = v.iter().map(Trace::action_string).collect();
        assert_eq!(strings, ["D", "DR", "LR", "RD", "U"]);
    }
}
