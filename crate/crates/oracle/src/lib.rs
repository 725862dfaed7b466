//! Reference computations for tests.
//!
//! Nothing here uses the enumeration, likelihood or observer code of
//! `interp-core`; only its plain data types are shared. Movement rules are
//! re-derived from the raw cells, behavior sets come from a recursive walk
//! over every feasible trace, and posteriors are obtained by conditioning
//! the explicit joint distribution over (hypothesis, trace) pairs.

use std::collections::BTreeMap;

use interp_core::{AgentModel, Cell, Coord, Direction, GridScenario, HypothesisSet, ParameterSelector, Trace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod corpus;

fn cell_at(s: &GridScenario, c: Coord) -> Option<Cell> {
    (c.col < s.width() && c.row < s.height()).then(|| s.cells()[c.row * s.width() + c.col])
}

fn neighbour(c: Coord, d: Direction) -> Option<Coord> {
    let (dc, dr): (i64, i64) = match d {
        Direction::Up => (0, -1),
        Direction::Down => (0, 1),
        Direction::Left => (-1, 0),
        Direction::Right => (1, 0),
    };
    let col = c.col as i64 + dc;
    let row = c.row as i64 + dr;
    (col >= 0 && row >= 0).then(|| Coord::new(col as usize, row as usize))
}

/// Legal moves from the end of `path` (a list of visited coordinates).
fn moves_from(s: &GridScenario, path: &[Coord]) -> Vec<(Direction, Coord)> {
    let at = *path.last().unwrap();
    let mut out = Vec::new();
    for d in [Direction::Up, Direction::Down, Direction::Left, Direction::Right] {
        if !s.allowed_moves().contains(d) {
            continue;
        }
        if let Some(Cell::Directional(only)) = cell_at(s, at) {
            if only != d {
                continue;
            }
        }
        let Some(to) = neighbour(at, d) else { continue };
        match cell_at(s, to) {
            None | Some(Cell::Wall) => continue,
            _ => {}
        }
        if s.no_revisit() && path.contains(&to) {
            continue;
        }
        out.push((d, to));
    }
    out
}

/// Every feasible trace from the start, of any length, with a flag telling
/// whether it can still be extended. Panics past `limit` traces.
pub fn all_traces(s: &GridScenario, limit: usize) -> Vec<(Trace, bool)> {
    fn walk(
        s: &GridScenario,
        path: &mut Vec<Coord>,
        actions: &mut Vec<Direction>,
        out: &mut Vec<(Trace, bool)>,
        limit: usize,
    ) {
        assert!(out.len() < limit, "oracle enumeration limit exceeded");
        let next = moves_from(s, path);
        out.push((Trace::new(path[0], actions.clone()), !next.is_empty()));
        for (d, to) in next {
            path.push(to);
            actions.push(d);
            walk(s, path, actions, out, limit);
            path.pop();
            actions.pop();
        }
    }
    let mut out = Vec::new();
    walk(s, &mut vec![s.start()], &mut Vec::new(), &mut out, limit);
    out
}

/// Goal-reaching traces: end on the goal, not visiting it before.
pub fn goal_traces(s: &GridScenario, goal: char, limit: usize) -> Vec<Trace> {
    let Some(g) = (0..s.cells().len()).find(|i| s.cells()[*i] == Cell::Object(goal)) else {
        return Vec::new();
    };
    let g = Coord::new(g % s.width(), g / s.width());
    all_traces(s, limit)
        .into_iter()
        .map(|(t, _)| t)
        .filter(|t| {
            let states = t.states();
            states.last() == Some(&g) && !states[..states.len() - 1].contains(&g)
        })
        .collect()
}

pub fn maximal_traces(s: &GridScenario, limit: usize) -> Vec<Trace> {
    all_traces(s, limit).into_iter().filter(|(_, ext)| !ext).map(|(t, _)| t).collect()
}

/// Likelihood of each goal trace of `m`, straight from the definitions.
pub fn model_distribution(s: &GridScenario, m: &AgentModel, limit: usize) -> Vec<(Trace, f64)> {
    let traces = goal_traces(s, m.goal(), limit);
    if traces.is_empty() {
        return Vec::new();
    }
    let costs: Vec<f64> = traces.iter().map(|t| m.step_cost() * t.actions.len() as f64).collect();
    let min = costs.iter().copied().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = if m.beta() == f64::INFINITY {
        costs.iter().map(|c| if *c == min { 1.0 } else { 0.0 }).collect()
    } else {
        costs.iter().map(|c| (-m.beta() * (c - min)).exp()).collect()
    };
    let z: f64 = weights.iter().sum();
    traces.into_iter().zip(weights).map(|(t, w)| (t, w / z)).collect()
}

pub fn m0_distribution(s: &GridScenario, limit: usize) -> Vec<(Trace, f64)> {
    let traces = maximal_traces(s, limit);
    let p = 1.0 / traces.len() as f64;
    traces.into_iter().map(|t| (t, p)).collect()
}

/// Joint distribution over (hypothesis index, trace); M0 is index `models.len()`.
pub fn joint(s: &GridScenario, hs: &HypothesisSet, limit: usize) -> Vec<(usize, Trace, f64)> {
    let mut out = Vec::new();
    for (i, (m, prior)) in hs.models().iter().zip(hs.priors()).enumerate() {
        for (t, p) in model_distribution(s, m, limit) {
            out.push((i, t, prior * p));
        }
    }
    let k = hs.models().len();
    for (t, p) in m0_distribution(s, limit) {
        out.push((k, t, hs.m0_prior() * p));
    }
    out
}

fn extends(prefix: &Trace, t: &Trace) -> bool {
    t.start == prefix.start
        && t.actions.len() >= prefix.actions.len()
        && t.actions[..prefix.actions.len()] == prefix.actions[..]
}

fn normalize(mass: Vec<f64>) -> Option<Vec<f64>> {
    let z: f64 = mass.iter().sum();
    (z > 0.0).then(|| mass.into_iter().map(|m| m / z).collect())
}

/// The joint distribution and the feasible set of one scenario, computed once
/// and conditioned on demand.
pub struct Reference {
    pub hypotheses: HypothesisSet,
    pub joint: Vec<(usize, Trace, f64)>,
    pub feasible: Vec<Trace>,
}

impl Reference {
    pub fn new(s: &GridScenario, hs: &HypothesisSet, limit: usize) -> Self {
        Reference {
            hypotheses: hs.clone(),
            joint: joint(s, hs, limit),
            feasible: all_traces(s, limit).into_iter().map(|(t, _)| t).collect(),
        }
    }

    fn k(&self) -> usize {
        self.hypotheses.models().len()
    }

    /// P(hypothesis | prefix) by conditioning the joint on traces extending
    /// the prefix. `None` when nothing in the joint is consistent with it.
    pub fn posterior(&self, prefix: &Trace) -> Option<Vec<f64>> {
        let mut mass = vec![0.0; self.k() + 1];
        for (i, t, w) in &self.joint {
            if extends(prefix, t) {
                mass[*i] += w;
            }
        }
        normalize(mass)
    }

    /// P(hypothesis | trace) when `trace` is the whole behavior: M0 spreads
    /// its mass evenly over every feasible trace.
    pub fn posterior_complete(&self, trace: &Trace) -> Option<Vec<f64>> {
        let k = self.k();
        let mut mass = vec![0.0; k + 1];
        for (i, t, w) in &self.joint {
            if *i < k && t == trace {
                mass[*i] += w;
            }
        }
        if self.feasible.contains(trace) {
            mass[k] = self.hypotheses.m0_prior() / self.feasible.len() as f64;
        }
        normalize(mass)
    }

    /// P(completion | prefix), keyed by the completion's action string.
    pub fn completion_posterior(&self, prefix: &Trace) -> BTreeMap<String, f64> {
        let mut out = BTreeMap::new();
        let mut z = 0.0;
        for (_, t, w) in &self.joint {
            if extends(prefix, t) {
                let suffix: String = t.actions[prefix.actions.len()..].iter().map(|d| d.letter()).collect();
                *out.entry(suffix).or_insert(0.0) += w;
                z += w;
            }
        }
        for v in out.values_mut() {
            *v /= z;
        }
        out
    }
}

pub fn posterior(s: &GridScenario, hs: &HypothesisSet, prefix: &Trace, limit: usize) -> Option<Vec<f64>> {
    Reference::new(s, hs, limit).posterior(prefix)
}

pub fn posterior_complete(s: &GridScenario, hs: &HypothesisSet, trace: &Trace, limit: usize) -> Option<Vec<f64>> {
    Reference::new(s, hs, limit).posterior_complete(trace)
}

pub fn completion_posterior(
    s: &GridScenario,
    hs: &HypothesisSet,
    prefix: &Trace,
    limit: usize,
) -> BTreeMap<String, f64> {
    Reference::new(s, hs, limit).completion_posterior(prefix)
}

pub fn entropy(p: &[f64]) -> f64 {
    p.iter().filter(|x| **x > 0.0).map(|x| -x * x.ln()).sum()
}

/// Deterministic generator for tests needing ad-hoc randomness.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform pick from a slice.
pub fn pick<'a, T>(rng: &mut impl Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}

/// Score components for one observation, computed from oracle posteriors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scores {
    pub explicability: f64,
    pub legibility: f64,
    pub predictability: f64,
    pub deception: f64,
    pub obfuscation: f64,
}

impl Scores {
    pub fn dot(&self, w: &[f64; 5]) -> f64 {
        w[0] * self.explicability
            + w[1] * self.legibility
            + w[2] * self.predictability
            + w[3] * self.deception
            + w[4] * self.obfuscation
    }
}

fn scores_from(
    hs: &HypothesisSet,
    post: &[f64],
    selector: Option<&ParameterSelector>,
    true_id: &str,
    pred: f64,
) -> Scores {
    let k = hs.models().len();
    let legibility = selector
        .map(|sel| hs.models().iter().zip(post).filter(|(m, _)| sel.matches(m)).map(|(_, p)| p).sum())
        .unwrap_or(0.0);
    let deception = hs.models().iter().position(|m| m.id() == true_id).map(|i| -post[i]).unwrap_or(0.0);
    Scores {
        explicability: post[..k].iter().sum(),
        legibility,
        predictability: pred,
        deception,
        obfuscation: entropy(post),
    }
}

/// Scores after the first `k` actions of `full`, with the rest of `full` as
/// the intended completion. `k == full.len()` judges `full` as complete.
pub fn scores_at(r: &Reference, full: &Trace, k: usize, selector: Option<&ParameterSelector>, true_id: &str) -> Scores {
    let hs = &r.hypotheses;
    if k == full.actions.len() {
        let post = r.posterior_complete(full).expect("complete trace has no support");
        return scores_from(hs, &post, selector, true_id, 1.0);
    }
    let prefix = Trace::new(full.start, full.actions[..k].to_vec());
    let post = r.posterior(&prefix).expect("prefix has no support");
    let rest: String = full.actions[k..].iter().map(|d| d.letter()).collect();
    let pred = r.completion_posterior(&prefix).get(&rest).copied().unwrap_or(0.0);
    scores_from(hs, &post, selector, true_id, pred)
}

/// Exhaustive argmax over the true model's goal traces. Returns the winning
/// action string and its objective value. Ties within `tol` keep the
/// lexicographically smallest action string.
#[allow(clippy::too_many_arguments)]
pub fn best_plan(
    s: &GridScenario,
    hs: &HypothesisSet,
    true_model: &AgentModel,
    weights: [f64; 5],
    selector: Option<&ParameterSelector>,
    mean: bool,
    optimal_only: bool,
    tol: f64,
    limit: usize,
) -> Option<(String, f64)> {
    let r = Reference::new(s, hs, limit);
    let mut cands = goal_traces(s, true_model.goal(), limit);
    if optimal_only {
        let min = cands.iter().map(|t| t.actions.len()).min()?;
        cands.retain(|t| t.actions.len() == min);
    }
    let mut cands: Vec<(String, Trace)> = cands.into_iter().map(|t| (t.action_string(), t)).collect();
    cands.sort();
    let mut best: Option<(String, f64)> = None;
    for (name, t) in cands {
        let n = t.actions.len();
        let value = if mean && n > 0 {
            (0..n).map(|k| scores_at(&r, &t, k, selector, true_model.id()).dot(&weights)).sum::<f64>() / n as f64
        } else if mean {
            scores_at(&r, &t, 0, selector, true_model.id()).dot(&weights)
        } else {
            scores_at(&r, &t, n, selector, true_model.id()).dot(&weights)
        };
        match &best {
            Some((_, b)) if value <= b + tol => {}
            _ => best = Some((name, value)),
        }
    }
    best
}
