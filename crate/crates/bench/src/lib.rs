//! Scenarios shared by the benchmarks in `benches/`.

use interp_core::{AgentModel, Cell, Coord, Direction, GridScenario, HypothesisSet};

/// `w` x `h` open grid with the start in the top-left corner, goal `A` in
/// the bottom-right corner and goal `B` in the top-right corner.
pub fn open_grid(w: usize, h: usize) -> GridScenario {
    let mut cells = vec![Cell::Free; w * h];
    cells[w * h - 1] = Cell::Object('A');
    cells[w - 1] = Cell::Object('B');
    GridScenario::new(w, h, cells, Coord::new(0, 0), Direction::ALL.into_iter().collect(), true).unwrap()
}

/// Two Boltzmann goal models and M0.
pub fn two_goals(s: &GridScenario, beta: f64) -> HypothesisSet {
    let models = vec![AgentModel::new("a", 'A', beta).unwrap(), AgentModel::new("b", 'B', beta).unwrap()];
    HypothesisSet::new(s, models, vec![0.45, 0.45], 0.1).unwrap()
}
