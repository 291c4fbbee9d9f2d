mod common;

use common::{fixtures_up_to, Oracle};
use mbtd_core::game::{Game, GameStatus, Player, Position};
use mbtd_core::graph::Graph;
use mbtd_core::solver::{find_double_trap_move, Solver, SolverConfig};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn solver() -> Solver {
    Solver::new(SolverConfig::default())
}

/// Random simple graphs on up to `max_n` vertices.
fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let k = pairs.len();
        proptest::collection::vec(any::<bool>(), k).prop_map(move |keep| {
            let edges: Vec<_> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// A graph with a legal position reached by a random move sequence from either start.
fn graph_and_position(max_n: usize) -> impl Strategy<Value = (Graph, Position)> {
    (graphs(max_n), any::<bool>(), proptest::collection::vec(any::<prop::sample::Index>(), 0..6)).prop_map(
        |(g, staller_first, picks)| {
            let game = Game::new(g.clone());
            let first = if staller_first { Player::Staller } else { Player::Dominator };
            let mut p = game.start(first);
            for i in picks {
                let moves: Vec<usize> = game.legal_moves(&p).iter().collect();
                if moves.is_empty() {
                    break;
                }
                p = game.apply_move(&p, moves[i.index(moves.len())]).unwrap();
            }
            (g, p)
        },
    )
}

fn oracle_winner(g: &Graph, p: &Position) -> Player {
    let mut o = Oracle::new(g);
    if o.staller_wins(p.dominator.0, p.staller.0, p.to_move == Player::Staller) {
        Player::Staller
    } else {
        Player::Dominator
    }
}

#[test]
fn solver_matches_oracle_on_small_fixtures() {
    let s = solver();
    for (name, g) in fixtures_up_to(9) {
        let game = Game::new(g.clone());
        for first in [Player::Dominator, Player::Staller] {
            let expected = Oracle::new(&g).winner(first);
            assert_eq!(s.winner(&game, &game.start(first)).unwrap(), expected, "{name}, {first} first");
        }
    }
}

#[test]
fn pruning_toggles_never_change_the_winner() {
    let base = SolverConfig::default().sequential();
    let variants = {
        let mut v = vec![base.clone().unpruned()];
        let mut c = base.clone();
        c.hit_set_removal = false;
        v.push(c);
        let mut c = base.clone();
        c.dominated_move = false;
        v.push(c);
        let mut c = base.clone();
        c.threat_extension = false;
        v.push(c);
        v
    };
    for (name, g) in fixtures_up_to(12) {
        let game = Game::new(g);
        for first in [Player::Dominator, Player::Staller] {
            let start = game.start(first);
            let expected = Solver::new(base.clone()).winner(&game, &start).unwrap();
            for cfg in &variants {
                let got = Solver::new(cfg.clone()).winner(&game, &start).unwrap();
                assert_eq!(got, expected, "{name}, {first} first, {cfg:?}");
            }
        }
    }
}

#[test]
fn relabelling_preserves_the_winner() {
    for (name, g) in fixtures_up_to(16) {
        let game = Game::new(g.clone());
        let s = solver();
        let expected: Vec<Player> =
            [Player::Dominator, Player::Staller].map(|f| s.winner(&game, &game.start(f)).unwrap()).to_vec();
        let perms = Just((0..g.n()).collect::<Vec<usize>>()).prop_shuffle();
        let mut runner = TestRunner::new(Config { cases: 20, ..Config::default() });
        runner
            .run(&perms, |perm| {
                let h = Game::new(g.relabel(&perm));
                let s = solver();
                for (i, f) in [Player::Dominator, Player::Staller].into_iter().enumerate() {
                    prop_assert_eq!(s.winner(&h, &h.start(f)).unwrap(), expected[i]);
                }
                Ok(())
            })
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

proptest! {
    #![proptest_config(Config { cases: 300, ..Config::default() })]

    #[test]
    fn solver_matches_oracle_on_random_positions((g, p) in graph_and_position(8)) {
        let game = Game::new(g.clone());
        let r = solver().solve(&game, &p).unwrap();
        prop_assert_eq!(r.winner, oracle_winner(&g, &p));
    }

    #[test]
    fn best_move_and_principal_line_are_consistent((g, p) in graph_and_position(8)) {
        let game = Game::new(g);
        let r = solver().solve(&game, &p).unwrap();
        let ongoing = game.status(&p) == GameStatus::Ongoing;
        prop_assert_eq!(r.best_move.is_some(), ongoing);
        if let Some(v) = r.best_move {
            prop_assert!(p.is_free(v));
        }
        let end = game.apply_line(&p, &r.principal_line).unwrap();
        prop_assert_eq!(game.status(&end).winner(), Some(r.winner));
    }

    #[test]
    fn granting_staller_a_vertex_never_hurts_her((g, p) in graph_and_position(8), pick in any::<prop::sample::Index>()) {
        let game = Game::new(g);
        let free: Vec<usize> = p.free().iter().collect();
        prop_assume!(!free.is_empty());
        let x = free[pick.index(free.len())];
        let s = solver();
        if s.winner(&game, &p).unwrap() == Player::Staller {
            let richer = Position::setup(p.n, p.dominator.iter(), p.staller.iter().chain([x]), p.to_move).unwrap();
            prop_assert_eq!(s.winner(&game, &richer).unwrap(), Player::Staller);
        }
    }

    #[test]
    fn double_trap_means_staller_wins((g, p) in graph_and_position(8)) {
        let game = Game::new(g);
        if p.to_move == Player::Staller && game.status(&p) == GameStatus::Ongoing && find_double_trap_move(&game, &p).is_some() {
            prop_assert_eq!(solver().winner(&game, &p).unwrap(), Player::Staller);
        }
    }

    #[test]
    fn sequential_and_parallel_agree((g, p) in graph_and_position(8)) {
        let game = Game::new(g);
        let a = Solver::new(SolverConfig::default()).solve(&game, &p).unwrap();
        let b = Solver::new(SolverConfig::default().sequential()).solve(&game, &p).unwrap();
        prop_assert_eq!(a.winner, b.winner);
        prop_assert_eq!(a.best_move, b.best_move);
    }
}
