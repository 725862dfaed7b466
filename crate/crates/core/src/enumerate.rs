//! Exact enumeration of behavior universes.
//!
//! Explicit models range over the traces from the start that end on their
//! goal (the goal is reached only at the end). M0 ranges over the maximal
//! feasible traces: those with no legal extension. All sets are produced by
//! depth-first search in lexicographic action order, so two calls always
//! return identical sequences and prefix-sharing traces are contiguous.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scenario::{AgentModel, Coord, Direction, GridScenario, Trace};

/// Default bound on explored partial traces.
pub const DEFAULT_TRACE_CAP: usize = 10_000_000;

/// Whose behavior universe is meant: an explicit model, or M0.
#[derive(Debug, Clone, Copy)]
pub enum Behavior<'a> {
    Model(&'a AgentModel),
    M0,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    GoalReaching(String),
    MaximalFeasible,
    /// Suffixes of another set that extend a given prefix.
    Completions(Box<Provenance>),
}

/// Finite, duplicate-free, lexicographically ordered set of traces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviorSet {
    traces: Vec<Trace>,
    provenance: Provenance,
}

impl BehaviorSet {
    pub fn traces(&self) -> &[Trace] {
        &self.traces
    }

    pub fn into_traces(self) -> Vec<Trace> {
        self.traces
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn contains(&self, trace: &Trace) -> bool {
        self.traces.binary_search(trace).is_ok()
    }

    /// Index range of the traces that extend `prefix`.
    pub fn prefix_range(&self, prefix: &Trace) -> std::ops::Range<usize> {
        prefix_range(&self.traces, prefix)
    }

    /// Suffixes completing `prefix` into a member of this set. The empty
    /// suffix is included when `prefix` is itself a member.
    pub fn completions(&self, prefix: &Trace) -> BehaviorSet {
        let end = prefix.terminal();
        let k = prefix.len();
        let traces =
            self.traces[self.prefix_range(prefix)].iter().map(|t| Trace::new(end, t.actions[k..].to_vec())).collect();
        BehaviorSet { traces, provenance: Provenance::Completions(Box::new(self.provenance.clone())) }
    }
}

/// Range of `sorted` whose members start with `prefix`. Relies on the
/// lexicographic ordering of the slice.
pub(crate) fn prefix_range(sorted: &[Trace], prefix: &Trace) -> std::ops::Range<usize> {
    let lo = sorted.partition_point(|t| (t.start, t.actions.as_slice()) < (prefix.start, prefix.actions.as_slice()));
    let hi = lo + sorted[lo..].partition_point(|t| prefix.is_prefix_of(t));
    lo..hi
}

/// Narrows a range of traces already known to share a prefix of length
/// `depth` down to those whose next action is `d`.
pub(crate) fn narrow_range(
    sorted: &[Trace],
    range: std::ops::Range<usize>,
    depth: usize,
    d: Direction,
) -> std::ops::Range<usize> {
    let slice = &sorted[range.clone()];
    // members equal to the prefix itself (no action at `depth`) sort first
    let lo = slice.partition_point(|t| t.actions.get(depth).is_none_or(|a| *a < d));
    let hi = lo + slice[lo..].partition_point(|t| t.actions.get(depth) == Some(&d));
    range.start + lo..range.start + hi
}

/// Enumeration with an explicit bound on explored partial traces.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    pub cap: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator { cap: DEFAULT_TRACE_CAP }
    }
}

enum Stop {
    AtGoal(Coord),
    WhenStuck,
}

impl Enumerator {
    pub fn new(cap: usize) -> Self {
        Enumerator { cap }
    }

    pub fn goal_traces(&self, scenario: &GridScenario, model: &AgentModel) -> Result<BehaviorSet> {
        let goal = model.goal_cell(scenario)?;
        let traces = self.search(scenario, Stop::AtGoal(goal))?;
        Ok(BehaviorSet { traces, provenance: Provenance::GoalReaching(model.id().to_string()) })
    }

    pub fn maximal_traces(&self, scenario: &GridScenario) -> Result<BehaviorSet> {
        let traces = self.search(scenario, Stop::WhenStuck)?;
        Ok(BehaviorSet { traces, provenance: Provenance::MaximalFeasible })
    }

    pub fn behaviors(&self, scenario: &GridScenario, who: Behavior<'_>) -> Result<BehaviorSet> {
        match who {
            Behavior::Model(m) => self.goal_traces(scenario, m),
            Behavior::M0 => self.maximal_traces(scenario),
        }
    }

    fn search(&self, scenario: &GridScenario, stop: Stop) -> Result<Vec<Trace>> {
        let start = scenario.start();
        let mut out = Vec::new();
        let mut actions: Vec<Direction> = Vec::new();
        // (position, visited set on arrival, next direction index to try)
        let mut stack: Vec<(Coord, u128, usize)> = vec![(start, scenario.bit(start), 0)];
        let mut explored = 1usize;

        if let Stop::AtGoal(goal) = stop {
            if start == goal {
                return Ok(vec![Trace::empty(start)]);
            }
        }

        while let Some(top) = stack.last_mut() {
            let (at, visited, next) = *top;
            if next == 0 {
                if let Stop::WhenStuck = stop {
                    if successors(scenario, at, visited).next().is_none() {
                        out.push(Trace::new(start, actions.clone()));
                    }
                }
            }
            let candidate = Direction::ALL[next..]
                .iter()
                .enumerate()
                .find_map(|(i, &d)| legal(scenario, at, visited, d).map(|to| (next + i, d, to)));
            match candidate {
                None => {
                    stack.pop();
                    actions.pop();
                }
                Some((i, d, to)) => {
                    top.2 = i + 1;
                    explored += 1;
                    if explored > self.cap {
                        return Err(Error::Explosion { cap: self.cap });
                    }
                    actions.push(d);
                    match stop {
                        Stop::AtGoal(goal) if to == goal => {
                            out.push(Trace::new(start, actions.clone()));
                            actions.pop();
                        }
                        _ => stack.push((to, visited | scenario.bit(to), 0)),
                    }
                }
            }
        }
        Ok(out)
    }

    /// Number of goal-reaching traces, by memoized counting instead of
    /// materialization. Fails with [`Error::Explosion`] when the count is
    /// unbounded (a reachable cycle with revisits allowed) or above the cap.
    pub fn count_goal_traces(&self, scenario: &GridScenario, model: &AgentModel) -> Result<u128> {
        let goal = model.goal_cell(scenario)?;
        Counter::new(scenario, Count::Goal(goal), self.cap).count()
    }

    pub fn count_maximal_traces(&self, scenario: &GridScenario) -> Result<u128> {
        Counter::new(scenario, Count::Maximal, self.cap).count()
    }

    /// Number of valid traces from the start of any length, the empty trace
    /// included. This prefix-closed set is M0's universe when a trace is
    /// judged as a complete behavior.
    pub fn count_feasible_traces(&self, scenario: &GridScenario) -> Result<u128> {
        Counter::new(scenario, Count::Feasible, self.cap).count()
    }
}

fn legal(scenario: &GridScenario, at: Coord, visited: u128, d: Direction) -> Option<Coord> {
    let to = scenario.step(at, d)?;
    (!scenario.no_revisit() || visited & scenario.bit(to) == 0).then_some(to)
}

fn successors(scenario: &GridScenario, at: Coord, visited: u128) -> impl Iterator<Item = Coord> + '_ {
    Direction::ALL.into_iter().filter_map(move |d| legal(scenario, at, visited, d))
}

#[derive(Clone, Copy, PartialEq)]
enum Count {
    Goal(Coord),
    Maximal,
    Feasible,
}

/// Suffix counts keyed by (position, visited set). With revisits allowed the
/// future does not depend on history, so the visited part of the key is
/// dropped and an on-stack marker detects cycles.
struct Counter<'a> {
    scenario: &'a GridScenario,
    what: Count,
    cap: usize,
    memo: HashMap<(Coord, u128), u128>,
    on_stack: HashMap<Coord, bool>,
}

impl<'a> Counter<'a> {
    fn new(scenario: &'a GridScenario, what: Count, cap: usize) -> Self {
        Counter { scenario, what, cap, memo: HashMap::new(), on_stack: HashMap::new() }
    }

    fn count(&mut self) -> Result<u128> {
        let start = self.scenario.start();
        let n = self.visit(start, self.scenario.bit(start))?;
        if n > self.cap as u128 {
            return Err(Error::Explosion { cap: self.cap });
        }
        Ok(n)
    }

    fn visit(&mut self, at: Coord, visited: u128) -> Result<u128> {
        if self.what == Count::Goal(at) {
            return Ok(1);
        }
        let key = (at, if self.scenario.no_revisit() { visited } else { 0 });
        if let Some(&n) = self.memo.get(&key) {
            return Ok(n);
        }
        if !self.scenario.no_revisit() {
            if self.on_stack.get(&at).copied().unwrap_or(false) {
                return Err(Error::Explosion { cap: self.cap });
            }
            self.on_stack.insert(at, true);
        }
        let next: Vec<Coord> = successors(self.scenario, at, visited).collect();
        let mut total: u128 = match self.what {
            Count::Feasible => 1,
            Count::Maximal if next.is_empty() => 1,
            _ => 0,
        };
        for to in next {
            total = total.saturating_add(self.visit(to, visited | self.scenario.bit(to))?);
        }
        if !self.scenario.no_revisit() {
            self.on_stack.insert(at, false);
        }
        self.memo.insert(key, total);
        Ok(total)
    }
}

pub fn enumerate_goal_traces(scenario: &GridScenario, model: &AgentModel) -> Result<BehaviorSet> {
    Enumerator::default().goal_traces(scenario, model)
}

pub fn enumerate_maximal_traces(scenario: &GridScenario) -> Result<BehaviorSet> {
    Enumerator::default().maximal_traces(scenario)
}

/// Suffixes completing `prefix` into a behavior of `who`.
pub fn completions(scenario: &GridScenario, who: Behavior<'_>, prefix: &Trace) -> Result<BehaviorSet> {
    Ok(Enumerator::default().behaviors(scenario, who)?.completions(prefix))
}

/// `step_cost * len`; additive over concatenation.
pub fn trace_cost(model: &AgentModel, trace: &Trace) -> f64 {
    model.step_cost() * trace.len() as f64
}

/// Minimal-cost goal-reaching traces of `model`.
pub fn optimal_traces(scenario: &GridScenario, model: &AgentModel) -> Result<BehaviorSet> {
    let all = enumerate_goal_traces(scenario, model)?;
    optimal_subset(all, model)
}

pub(crate) fn optimal_subset(all: BehaviorSet, model: &AgentModel) -> Result<BehaviorSet> {
    let best = all.traces.iter().map(Trace::len).min().ok_or_else(|| Error::NoPlan(model.id().to_string()))?;
    // uniform step cost: minimal cost is minimal length
    let traces = all.traces.into_iter().filter(|t| t.len() == best).collect();
    Ok(BehaviorSet { traces, provenance: all.provenance })
}
