use interp_core::{
    enumerate_goal_traces, likelihood_full, likelihood_prefix, optimal_traces, trace_cost, AgentModel, Behavior, Cell,
    Coord, Direction, GridScenario, LikelihoodTable, MoveSet,
};
use interp_oracle::corpus::{case, corpus, BETAS};
use proptest::prelude::*;

const LIMIT: usize = 2_000_000;

#[test]
fn matches_direct_formula_on_corpus() {
    for c in corpus(1000, 150) {
        let s = &c.scenario;
        for m in c.hypotheses.models() {
            for beta in BETAS {
                let m = m.with_beta(beta).unwrap();
                let table = LikelihoodTable::build(s, Behavior::Model(&m)).unwrap();
                for (t, p) in interp_oracle::model_distribution(s, &m, LIMIT) {
                    assert!((table.get(&t) - p).abs() < 1e-12, "seed {} beta {beta}", c.seed);
                }
            }
        }
    }
}

#[test]
fn normalization_for_every_regime() {
    for c in corpus(2000, 100) {
        let s = &c.scenario;
        for m in c.hypotheses.models() {
            for beta in BETAS {
                let m = m.with_beta(beta).unwrap();
                let table = LikelihoodTable::build(s, Behavior::Model(&m)).unwrap();
                let total: f64 = table.probs().iter().sum();
                assert!((total - 1.0).abs() < 1e-9);
            }
        }
        let m0 = LikelihoodTable::build(s, Behavior::M0).unwrap();
        assert!((m0.probs().iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn large_beta_recovers_the_normative_regime() {
    for c in corpus(3000, 200) {
        let s = &c.scenario;
        for m in c.hypotheses.models() {
            let hot = m.with_beta(64.0).unwrap();
            let norm = m.with_beta(f64::INFINITY).unwrap();
            let opt = optimal_traces(s, m).unwrap();
            for t in enumerate_goal_traces(s, m).unwrap().traces() {
                let p = likelihood_full(s, Behavior::Model(&hot), t).unwrap();
                if opt.contains(t) {
                    assert!((p - 1.0 / opt.len() as f64).abs() < 1e-9);
                    assert_eq!(likelihood_full(s, Behavior::Model(&norm), t).unwrap(), 1.0 / opt.len() as f64);
                } else {
                    assert!(p < 1e-12);
                }
            }
        }
    }
}

#[test]
fn no_underflow_at_very_large_beta() {
    let s = GridScenario::new(
        5,
        5,
        {
            let mut v = vec![Cell::Free; 25];
            v[24] = Cell::Object('G');
            v
        },
        Coord::new(0, 0),
        Direction::ALL.into_iter().collect(),
        true,
    )
    .unwrap();
    let m = AgentModel::new("g", 'G', 700.0).unwrap();
    let table = LikelihoodTable::build(&s, Behavior::Model(&m)).unwrap();
    let total: f64 = table.probs().iter().sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert!(table.probs().iter().all(|p| p.is_finite()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cheaper_is_likelier(seed in 0u64..100_000, bi in 1usize..4) {
        let c = case(seed);
        let beta = BETAS[bi];
        for m in c.hypotheses.models() {
            let m = m.with_beta(beta).unwrap();
            let table = LikelihoodTable::build(&c.scenario, Behavior::Model(&m)).unwrap();
            for (a, pa) in table.iter() {
                for (b, pb) in table.iter() {
                    if trace_cost(&m, a) < trace_cost(&m, b) {
                        prop_assert!(pa > pb);
                    }
                }
            }
        }
    }

    #[test]
    fn prefix_chain_rule(seed in 0u64..100_000, bi in 0usize..5, pick in 0usize..1000) {
        let c = case(seed);
        let s = &c.scenario;
        let m = c.hypotheses.models()[0].with_beta(BETAS[bi]).unwrap();
        let table = LikelihoodTable::build(s, Behavior::Model(&m)).unwrap();
        let (t, p) = table.iter().nth(pick % table.len()).unwrap();
        let goal = enumerate_goal_traces(s, &m).unwrap();
        for k in 0..=t.len() {
            let prefix = t.prefix(k);
            let lp = likelihood_prefix(s, Behavior::Model(&m), &prefix).unwrap();
            prop_assert!(lp >= p - 1e-15);
            let unique = goal.prefix_range(&prefix).len() == 1;
            if unique {
                prop_assert!((lp - p).abs() < 1e-12);
            } else if p > 0.0 {
                // other completions carry mass unless the regime zeroes them
                let others: f64 = goal.traces()[goal.prefix_range(&prefix)]
                    .iter()
                    .filter(|x| *x != t)
                    .map(|x| table.get(x))
                    .sum();
                prop_assert!((lp - p - others).abs() < 1e-12);
            }
        }
    }
}

/// Corridor to G along the top row, with a lower row that is either walled
/// off or open.
fn two_row(open: bool) -> GridScenario {
    let mut cells = vec![Cell::Free; 8];
    cells[3] = Cell::Object('G');
    if !open {
        for c in &mut cells[4..] {
            *c = Cell::Wall;
        }
    }
    let moves: MoveSet = [Direction::Down, Direction::Right, Direction::Up].into_iter().collect();
    GridScenario::new(4, 2, cells, Coord::new(0, 0), moves, true).unwrap()
}

#[test]
fn opening_cells_lowers_every_existing_trace() {
    let closed = two_row(false);
    let open = two_row(true);
    for beta in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
        let m = AgentModel::new("g", 'G', beta).unwrap();
        let small = LikelihoodTable::build(&closed, Behavior::Model(&m)).unwrap();
        let big = LikelihoodTable::build(&open, Behavior::Model(&m)).unwrap();
        assert!(big.len() > small.len());
        for (t, p) in small.iter() {
            // at beta = inf only equally cheap additions can dilute
            if beta.is_finite() {
                assert!(big.get(t) < p, "beta {beta} trace {t}");
            } else {
                assert!(big.get(t) <= p);
            }
        }
    }
}
