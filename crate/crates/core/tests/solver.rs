mod common;

use proptest::prelude::*;
use relgame::solver::best_move;
use relgame::verify::{catalog, solve_cases, SuiteConfig};
use relgame::{
    solve, solve_parallel, Budget, CayleyGraph, Element, Game, GameKind, GameState, GroupSpec, Player, SolveError,
    Solver, Step, Suite,
};

use common::{graph, instance_graph, Move, Position, Reference};

fn small_catalog(max_order: usize) -> Vec<CayleyGraph> {
    catalog().iter().map(instance_graph).filter(|g| g.order() <= max_order).collect()
}

/// Plays `choices` (each reduced modulo the number of legal letters) in both
/// the engine and the reference, stopping before the game ends.
fn walk(game: &Game<'_>, reference: &Reference, choices: &[usize]) -> (GameState, Position) {
    let graph = game.graph();
    let mut state = game.initial_state();
    let mut pos = reference.start();
    for &c in choices {
        let legal = game.legal_moves(&state);
        if legal.is_empty() {
            break;
        }
        let l = legal[c % legal.len()];
        let (Step::Next(s), Move::Continue(p)) = (game.apply_move(&state, l).unwrap(), reference.play(&pos, graph.letter(l).element)) else {
            break;
        };
        state = s;
        pos = p;
    }
    (state, pos)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Memoized values at arbitrary interior positions agree with a plain
    /// game-tree search.
    #[test]
    fn interior_values_match_reference(
        which in 0usize..1000,
        kind_ix in 0usize..4,
        choices in proptest::collection::vec(0usize..8, 0..6),
    ) {
        let graphs = small_catalog(12);
        let g = &graphs[which % graphs.len()];
        let kind = [GameKind::rel(), GameKind::rav(), GameKind::rel_n(3).unwrap(), GameKind::rel_n(4).unwrap()][kind_ix];
        let game = Game::new(g, kind).unwrap();
        let reference = Reference::new(g.group(), g.gens(), kind.variant(), kind.players());
        let (state, pos) = walk(&game, &reference, &choices);
        let mut solver = Solver::new(&game, Budget::default()).unwrap();
        let got = solver.value(&state).unwrap();
        prop_assert_eq!(got.index(), reference.winner(&pos));
    }
}

#[test]
fn parallel_matches_sequential_on_every_suite_case() {
    for suite in Suite::ALL {
        for case in solve_cases(&SuiteConfig::new(suite)) {
            let g = instance_graph(&case.instance);
            let budget = Budget::default();
            let (Ok(a), Ok(b)) = (solve(&g, case.kind, budget), solve_parallel(&g, case.kind, budget)) else {
                continue;
            };
            assert_eq!(a.winner, b.winner, "{} {}", case.instance, case.kind);
            assert_eq!(a.optimal_first, b.optimal_first, "{} {}", case.instance, case.kind);
        }
    }
}

#[test]
fn optimal_first_move_keeps_the_value() {
    for g in small_catalog(16) {
        for kind in [GameKind::rel(), GameKind::rav(), GameKind::rel_n(3).unwrap()] {
            let Ok(r) = solve(&g, kind, Budget::default()) else { continue };
            let game = Game::new(&g, kind).unwrap();
            let mut solver = Solver::new(&game, Budget::default()).unwrap();
            let root = game.initial_state();
            let Some(first) = r.optimal_first else { continue };
            let after = match game.apply_move(&root, first).unwrap() {
                Step::Terminal(o) => o.winner,
                Step::Next(s) => solver.value(&s).unwrap(),
            };
            assert_eq!(after, r.winner, "{} {kind}", g.group().name());
            // no smaller letter does as well
            for l in game.legal_moves(&root).into_iter().filter(|&l| l < first) {
                let w = match game.apply_move(&root, l).unwrap() {
                    Step::Terminal(o) => o.winner,
                    Step::Next(s) => solver.value(&s).unwrap(),
                };
                assert_ne!(w, r.winner, "{} {kind}: letter {} ties", g.group().name(), l.0);
            }
            assert_eq!(best_move(&g, kind, &root, Budget::default()).unwrap().map(|(l, _)| l), Some(first));
        }
    }
}

#[test]
fn ranking_is_a_rotation_of_seats() {
    for g in small_catalog(12) {
        for p in 2..=4 {
            let kind = GameKind::rel_n(p).unwrap();
            let r = solve(&g, kind, Budget::default()).unwrap();
            let ranking = r.ranking();
            assert_eq!(ranking.len(), p);
            assert_eq!(ranking[0], r.winner);
            let mut seats: Vec<u8> = ranking.iter().map(|s| s.0).collect();
            seats.sort_unstable();
            assert_eq!(seats, (0..p as u8).collect::<Vec<_>>());
            for w in ranking.windows(2) {
                assert_eq!(w[1].index(), (w[0].index() + 1) % p);
            }
        }
    }
}

#[test]
fn guards_and_budgets() {
    let big = graph(GroupSpec::Dicyclic(7));
    assert!(matches!(solve(&big, GameKind::rel(), Budget::default()), Err(SolveError::OrderGuard { order: 28, max: 24, .. })));
    let d9 = graph(GroupSpec::Dihedral(9));
    assert!(matches!(
        solve(&d9, GameKind::rel_n(3).unwrap(), Budget::default()),
        Err(SolveError::OrderGuard { order: 18, max: 16, players: 3, .. })
    ));
    let d9_raised = solve(&d9, GameKind::rel_n(3).unwrap(), Budget::default().with_max_order(18)).unwrap();
    assert_eq!(d9_raised.winner, Player(0));
    let z6 = graph(GroupSpec::ProductCyclic(6, 4));
    let starved = solve(&z6, GameKind::rav(), Budget::default().with_max_states(100));
    assert!(matches!(starved, Err(SolveError::StateBudget { budget: 100, .. })));
    let starved = solve_parallel(&z6, GameKind::rav(), Budget::default().with_max_states(100));
    assert!(matches!(starved, Err(SolveError::StateBudget { budget: 100, .. })));
}

#[test]
fn initial_position() {
    for g in small_catalog(24) {
        let game = Game::new(&g, GameKind::rel()).unwrap();
        let s = game.initial_state();
        assert_eq!(s.current, Element::IDENTITY);
        assert_eq!(s.visited.len(), 1);
        assert_eq!(s.mover, Player(0));
    }
}
