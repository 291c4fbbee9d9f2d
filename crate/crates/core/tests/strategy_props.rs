mod common;

use std::sync::Arc;

use common::{fixtures, fixtures_up_to};
use mbtd_core::game::{Game, GameStatus, Player, Position};
use mbtd_core::solver::{Solver, SolverConfig};
use mbtd_core::strategies::{certified_strategy, find_gadget, find_pairing_plan, gp1_pairing_plan, verify_pairing_plan, PairingStrategy, Strategy as _};
use mbtd_core::verify::{validate_strategy, Adversary, Instance, StrategyKind, Verdict};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn solver() -> Arc<Solver> {
    Arc::new(Solver::new(SolverConfig::default()))
}

#[test]
fn a_free_gadget_means_staller_wins() {
    let s = solver();
    let mut seen = 0;
    for (name, g) in fixtures_up_to(16) {
        let game = Game::new(g.clone());
        let mut starts = vec![game.start(Player::Staller)];
        for d1 in 0..g.n() {
            starts.push(game.start(Player::Dominator).play(d1).unwrap());
        }
        for p in starts {
            if find_gadget(&g, &p).is_some() {
                seen += 1;
                assert_eq!(s.winner(&game, &p).unwrap(), Player::Staller, "{name} after {:?}", p.history);
            }
        }
    }
    assert!(seen > 0, "no fixture position carries a gadget");
}

#[test]
fn pairing_plans_never_lose() {
    let s = solver();
    let mut graphs: Vec<_> = fixtures().into_iter().filter_map(|(name, g)| find_pairing_plan(&g).map(|p| (name, g, p))).collect();
    for n in 3..=9 {
        let g = mbtd_core::graph::generalized_petersen(n, 1).unwrap();
        let plan = gp1_pairing_plan(&g).unwrap();
        graphs.push((format!("gp({n},1)"), g, plan));
    }
    assert!(graphs.len() > 5);
    for (name, g, plan) in graphs {
        assert!(verify_pairing_plan(&g, &plan), "{name}");
        let game = Arc::new(Game::new(g.clone()));
        let strat = PairingStrategy::new(game.clone(), plan).unwrap();
        let adversary = if g.n() <= 12 { Adversary::Exhaustive } else { Adversary::Random { seed: 11, count: 10_000 } };
        for first in [Player::Staller, Player::Dominator] {
            let r = validate_strategy(&strat, &game, &game.start(first), adversary, &s);
            assert_eq!(r.verdict, Verdict::Pass, "{name}, {first} first: {:?}", r.counterexample);
        }
    }
}

#[test]
fn certified_strategies_beat_best_response() {
    let s = solver();
    let mut checked = 0;
    for (name, g) in fixtures() {
        let game = Arc::new(Game::new(g));
        for first in [Player::Dominator, Player::Staller] {
            for role in [Player::Dominator, Player::Staller] {
                let Some(strat) = certified_strategy(&game, role, first, &s) else { continue };
                checked += 1;
                let r = validate_strategy(&*strat, &game, &game.start(first), Adversary::SolverBest, &s);
                assert_eq!(r.verdict, Verdict::Pass, "{name}: {} as {role}, {first} first", strat.name());
            }
        }
    }
    assert!(checked >= 10);
}

/// Scripted Staller strategies on their own gadgets, with the position each starts from.
fn scripted_instances() -> Vec<(String, Arc<Game>, Box<dyn mbtd_core::strategies::Strategy>, Position)> {
    let s = solver();
    let mut out = Vec::new();
    let gadget_cases = [("G1", Player::Staller), ("G2", Player::Staller), ("G2/x2", Player::Staller), ("G2/z2", Player::Staller),
        ("G3", Player::Staller), ("G4", Player::Staller), ("three-claws", Player::Staller), ("tau", Player::Staller)];
    for (family, first) in gadget_cases {
        let inst = Instance::new(family, &[]);
        let (game, template) = inst.game().unwrap();
        let game = Arc::new(game);
        let start = template.as_ref().unwrap().setup(&game, first);
        let strat = StrategyKind::Gadget.build(game.clone(), template.as_ref(), &start, first, s.clone()).unwrap();
        out.push((family.to_string(), game, strat, start));
    }
    for (family, params, kind) in [("eta", vec![], StrategyKind::EtaStaller), ("omega", vec![1], StrategyKind::OmegaStaller), ("omega", vec![2], StrategyKind::OmegaStaller)] {
        let (game, _) = Instance::new(family, &params).game().unwrap();
        let game = Arc::new(game);
        let start = game.start(Player::Staller);
        let strat = kind.build(game.clone(), None, &start, Player::Staller, s.clone()).unwrap();
        out.push((format!("{family}{params:?}"), game, strat, start));
    }
    out
}

#[test]
fn scripts_only_return_legal_moves() {
    for (name, game, strat, start) in scripted_instances() {
        let mut runner = TestRunner::new(Config { cases: 200, ..Config::default() });
        let replies = proptest::collection::vec(any::<prop::sample::Index>(), 20);
        runner
            .run(&replies, |picks| {
                let mut p = start.clone();
                let mut picks = picks.into_iter();
                while game.status(&p) == GameStatus::Ongoing {
                    let v = if p.to_move == Player::Staller {
                        let d = strat.decide(&p).map_err(|e| TestCaseError::fail(e.to_string()))?;
                        prop_assert!(p.is_free(d.vertex), "{} is taken", d.vertex);
                        d.vertex
                    } else {
                        let moves: Vec<usize> = game.legal_moves(&p).iter().collect();
                        moves[picks.next().map_or(0, |i| i.index(moves.len()))]
                    };
                    p = game.apply_move(&p, v).unwrap();
                }
                Ok(())
            })
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
