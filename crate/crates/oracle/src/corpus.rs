//! Seeded random scenarios up to 4x4 for cross-checking.

use interp_core::{AgentModel, Cell, Coord, Direction, GridScenario, HypothesisSet, MoveSet};
use rand::Rng;

use crate::{goal_traces, pick, rng};

pub const BETAS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, f64::INFINITY];

#[derive(Debug, Clone)]
pub struct Case {
    pub seed: u64,
    pub scenario: GridScenario,
    pub hypotheses: HypothesisSet,
}

fn random_moves(r: &mut impl Rng, no_revisit: bool) -> MoveSet {
    if no_revisit {
        loop {
            let m: MoveSet = Direction::ALL.into_iter().filter(|_| r.gen_bool(0.8)).collect();
            if !m.is_empty() {
                return m;
            }
        }
    }
    // without the revisit rule only moves with no opposite pair keep the
    // behavior sets finite
    let vertical = *pick(r, &[Direction::Up, Direction::Down]);
    let horizontal = *pick(r, &[Direction::Left, Direction::Right]);
    [vertical, horizontal].into_iter().collect()
}

/// One random scenario. Every explicit model's goal is reachable.
pub fn case(seed: u64) -> Case {
    let mut r = rng(seed);
    loop {
        let w = r.gen_range(2..=4);
        let h = r.gen_range(2..=4);
        let no_revisit = r.gen_bool(0.8);
        let moves = random_moves(&mut r, no_revisit);
        let n = w * h;
        let start = r.gen_range(0..n);
        let mut cells = vec![Cell::Free; n];
        for (i, c) in cells.iter_mut().enumerate() {
            if i == start {
                continue;
            }
            let x: f64 = r.gen();
            if x < 0.08 {
                *c = Cell::Wall;
            } else if x < 0.13 {
                *c = Cell::Directional(*pick(&mut r, &Direction::ALL));
            }
        }
        let n_objects = r.gen_range(1..=3);
        let mut labels = Vec::new();
        for k in 0..n_objects {
            let at = r.gen_range(0..n);
            if at == start || matches!(cells[at], Cell::Object(_)) {
                continue;
            }
            let label = (b'A' + k as u8) as char;
            cells[at] = Cell::Object(label);
            labels.push(label);
        }
        let start = Coord::new(start % w, start / w);
        let Ok(s) = GridScenario::new(w, h, cells, start, moves, no_revisit) else { continue };
        let reachable: Vec<char> = labels.into_iter().filter(|l| !goal_traces(&s, *l, 1_000_000).is_empty()).collect();
        if reachable.is_empty() {
            continue;
        }
        let k = r.gen_range(1..=3);
        let mut models = Vec::new();
        for i in 0..k {
            let goal = *pick(&mut r, &reachable);
            let beta = *pick(&mut r, &BETAS);
            models.push(AgentModel::new(format!("h{i}"), goal, beta).unwrap());
        }
        let m0_prior = r.gen_range(0.01..0.4);
        let raw: Vec<f64> = (0..k).map(|_| r.gen_range(0.1..1.0)).collect();
        let z: f64 = raw.iter().sum();
        let mut priors: Vec<f64> = raw.iter().map(|x| x / z * (1.0 - m0_prior)).collect();
        let fix = 1.0 - m0_prior - priors.iter().sum::<f64>();
        priors[0] += fix;
        let hs = HypothesisSet::new(&s, models, priors, m0_prior).unwrap();
        return Case { seed, scenario: s, hypotheses: hs };
    }
}

/// `count` cases from consecutive seeds.
pub fn corpus(first_seed: u64, count: usize) -> Vec<Case> {
    (0..count as u64).map(|i| case(first_seed + i)).collect()
}
