mod common;

use relgame::solver::{adversarial_strategy_check, adversarial_strategy_check_with, Opposition, Policy};
use relgame::strategies::{immediate_relator, Prediction};
use relgame::verify::{catalog, policy_cases, run_policy_case, run_policy_suite, SuiteConfig};
use relgame::{
    predicted_outcome, solve, BoundPolicy, Budget, Game, GameKind, GensSpec, GroupSpec, Instance, Player, PolicyError,
    PolicyId, Step, Suite,
};

use common::{graph, instance_graph};

/// A policy that wins against every line must agree with the solver about
/// who wins.
#[test]
fn passing_policies_agree_with_the_solver() {
    let cfg = SuiteConfig::new(Suite::Policies);
    let cases = policy_cases(&cfg);
    assert!(!cases.is_empty());
    for case in &cases {
        let rec = run_policy_case(case, cfg.budget);
        assert!(rec.matched, "{} {} {}: {:?}", case.instance, case.kind, case.policy, rec.error);
        let g = instance_graph(&case.instance);
        let solved = solve(&g, case.kind, Budget::default().with_max_order(32)).unwrap();
        assert_eq!(solved.winner, case.seat, "{} {}", case.instance, case.policy);
    }
    assert!(run_policy_suite(&cfg).pass);
}

#[test]
fn oracle_wins_wherever_the_solver_says_its_seat_wins() {
    for inst in catalog() {
        let g = instance_graph(&inst);
        if g.order() > 12 {
            continue;
        }
        for kind in [GameKind::rel(), GameKind::rav(), GameKind::rel_n(3).unwrap()] {
            let w = solve(&g, kind, Budget::default()).unwrap().winner;
            let game = Game::new(&g, kind).unwrap();
            let mut p = BoundPolicy::bind(PolicyId::SolverOracle, &game, w, Budget::default()).unwrap();
            let opposition = if kind.players() == 2 { Opposition::Exhaustive } else { Opposition::Rational(Budget::default()) };
            let r = adversarial_strategy_check_with(&mut p, &game, w, opposition).unwrap();
            assert!(r.holds, "{inst} {kind}: {:?}", r.counterexample);
            if kind.players() == 2 {
                // and the losing seat cannot hold on with any policy, the oracle included
                let loser = w.offset(1, 2);
                let mut q = BoundPolicy::bind(PolicyId::SolverOracle, &game, loser, Budget::default()).unwrap();
                assert!(!adversarial_strategy_check(&mut q, &game, loser).unwrap().holds, "{inst} {kind}");
            }
        }
    }
}

/// After the opponent plays `s`, the odd-dihedral policy plays the only
/// letter that avoids a third square edge, or wins on the spot.
#[test]
fn odd_dihedral_policy_follows_forced_letters() {
    for n in [5, 7, 9] {
        let g = graph(GroupSpec::Dihedral(n));
        let game = Game::new(&g, GameKind::rel()).unwrap();
        let s = g.parse_letter("s").unwrap();
        let mut policy = BoundPolicy::bind(PolicyId::DihedralRelOddP1, &game, Player(0), Budget::default()).unwrap();
        let mut stack = vec![(game.initial_state(), Vec::new())];
        let mut seen_s = 0;
        while let Some((state, history)) = stack.pop() {
            if state.mover == Player(0) {
                let l = policy.choose(&state, &history).unwrap();
                if history.last() == Some(&s) && immediate_relator(&game, &state).is_none() {
                    seen_s += 1;
                    // exactly one letter leaves the opponent without an
                    // immediate relator, and the policy plays it
                    let safe: Vec<_> = game
                        .legal_moves(&state)
                        .into_iter()
                        .filter(|&c| match game.apply_move(&state, c).unwrap() {
                            Step::Next(next) => immediate_relator(&game, &next).is_none(),
                            Step::Terminal(_) => false,
                        })
                        .collect();
                    assert_eq!(safe, vec![l], "D_{n}: {history:?}");
                }
                if let Step::Next(next) = game.apply_move(&state, l).unwrap() {
                    let mut h = history.clone();
                    h.push(l);
                    stack.push((next, h));
                }
            } else {
                for l in game.legal_moves(&state) {
                    if let Step::Next(next) = game.apply_move(&state, l).unwrap() {
                        let mut h = history.clone();
                        h.push(l);
                        stack.push((next, h));
                    }
                }
            }
        }
        assert!(seen_s > 0);
    }
}

#[test]
fn acceptance_instances_have_predictions() {
    let canon = Instance::canonical;
    let mut pairs: Vec<(Instance, GameKind)> = Vec::new();
    for n in 3..=12 {
        pairs.push((canon(GroupSpec::Cyclic(n)), GameKind::rel()));
        pairs.push((canon(GroupSpec::Cyclic(n)), GameKind::rav()));
    }
    for kind in [GameKind::rel(), GameKind::rav()] {
        pairs.push((canon(GroupSpec::Quaternion), kind));
        pairs.push((Instance::new(GroupSpec::Dihedral(4), GensSpec::ComplementOf("r".into())), kind));
        for spec in [GroupSpec::Cyclic(3), GroupSpec::Cyclic(4), GroupSpec::Cyclic(5), GroupSpec::Cyclic(6), GroupSpec::Dihedral(3)] {
            pairs.push((Instance::new(spec, GensSpec::AllNonIdentity), kind));
        }
    }
    for n in 3..=9 {
        pairs.push((canon(GroupSpec::Dihedral(n)), GameKind::rel()));
        pairs.push((canon(GroupSpec::Dihedral(n)), GameKind::rav()));
    }
    for n in 2..=4 {
        pairs.push((canon(GroupSpec::Dicyclic(n)), GameKind::rel()));
        pairs.push((canon(GroupSpec::Dicyclic(n)), GameKind::rav()));
    }
    for n in 2..=3 {
        pairs.push((canon(GroupSpec::DicyclicTriangle(n)), GameKind::rel()));
        pairs.push((canon(GroupSpec::DicyclicTriangle(n)), GameKind::rav()));
    }
    for (n, m) in [(4, 3), (5, 3), (6, 3), (7, 3), (4, 4), (5, 4), (6, 4), (7, 4)] {
        pairs.push((canon(GroupSpec::ProductCyclic(n, m)), GameKind::rel()));
    }
    for n in 3..=8 {
        pairs.push((canon(GroupSpec::ProductCyclic(n, 2)), GameKind::rav()));
    }
    pairs.push((canon(GroupSpec::GeneralizedDihedral(vec![6])), GameKind::rav()));
    for n in 3..=7 {
        pairs.push((canon(GroupSpec::Dihedral(n)), GameKind::rel_n(3).unwrap()));
    }
    for (inst, kind) in pairs {
        let g = instance_graph(&inst);
        let p = predicted_outcome(&inst, &g, kind.variant(), kind.players());
        assert!(!matches!(p, Prediction::NotCovered), "{inst} {kind}");
        let solved = solve(&g, kind, Budget::default().with_max_order(28)).unwrap();
        assert_eq!(p.winner(), Some(solved.winner), "{inst} {kind}");
    }
}

#[test]
fn tokens_parse_and_bind_checks() {
    for id in PolicyId::all() {
        assert_eq!(id.token().parse::<PolicyId>().unwrap(), id);
    }
    assert!(matches!("nonsense".parse::<PolicyId>(), Err(PolicyError::Unknown(_))));
    let z5 = graph(GroupSpec::ProductCyclic(5, 3));
    let game = Game::new(&z5, GameKind::rel()).unwrap();
    for bad in ["dihedral-rel-odd-p1", "always-s", "dic-rav-x", "mirror", "rel3-always-s"] {
        let id: PolicyId = bad.parse().unwrap();
        assert!(BoundPolicy::bind(id, &game, Player(0), Budget::default()).is_err(), "{bad}");
    }
}
