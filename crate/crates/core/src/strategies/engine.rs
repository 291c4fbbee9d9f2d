//! Move selection for an engine opponent: a certified strategy for the graph's family
//! and the engine's role when one applies, the exact solver otherwise.

use std::sync::Arc;

use serde::Serialize;

use super::staller::{eta_staller, omega_staller, RemarkStaller};
use super::region::{eta_dominator, omega_dominator};
use super::{
    find_pairing_plan, gp1_pairing_plan, BipartiteCirculantStrategy, FirstMoveAdapter, PairingStrategy, PrismStrategy,
    SolverStrategy, Strategy, StrategyError,
};
use crate::game::{Game, Player, Position};
use crate::graph::{bipartite_circulant, generalized_petersen, Graph};
use crate::solver::Solver;

/// Largest board on which the engine searches for a pairing plan.
const PAIRING_SEARCH_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EngineMove {
    pub vertex: usize,
    /// Name of the strategy that chose the move.
    pub source: String,
    /// True when the strategy left its own case table and asked the solver.
    pub fallback: bool,
}

fn same_edges(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edges() == b.edges()
}

fn is_family(g: &Graph, build: impl Fn(usize) -> Option<Graph>, size: usize) -> bool {
    build(size).is_some_and(|h| same_edges(g, &h))
}

/// A strategy that wins for `role` on this game, given who moved first, if the toolkit
/// has one for the graph's family.
pub fn certified_strategy(game: &Arc<Game>, role: Player, first: Player, solver: &Arc<Solver>) -> Option<Box<dyn Strategy>> {
    let g = &game.graph;
    let n = g.n();
    let game = game.clone();
    let solver = solver.clone();
    match role {
        Player::Dominator => {
            if let Ok(s) = eta_dominator(game.clone(), solver.clone()) {
                return (first == Player::Dominator).then(|| Box::new(s) as Box<dyn Strategy>);
            }
            if let Ok(s) = omega_dominator(game.clone(), solver.clone()) {
                return (first == Player::Dominator).then(|| Box::new(s) as Box<dyn Strategy>);
            }
            if n % 2 == 0 && is_family(g, |m| bipartite_circulant(m).ok(), n / 2) {
                let inner = BipartiteCirculantStrategy::new(game.clone()).ok()?;
                return Some(Box::new(FirstMoveAdapter::new(game, inner).ok()?));
            }
            if n == 6 && is_family(g, |k| generalized_petersen(k, 1).ok(), 3) {
                let inner = PrismStrategy::new(game.clone()).ok()?;
                return Some(Box::new(FirstMoveAdapter::new(game, inner).ok()?));
            }
            if let Ok(plan) = gp1_pairing_plan(g) {
                return PairingStrategy::new(game, plan).ok().map(|s| Box::new(s) as Box<dyn Strategy>);
            }
            if n <= PAIRING_SEARCH_LIMIT {
                if let Some(plan) = find_pairing_plan(g) {
                    return PairingStrategy::new(game, plan).ok().map(|s| Box::new(s) as Box<dyn Strategy>);
                }
            }
            None
        }
        // η and ω are won by Dominator when she opens well, so Staller's scripts only
        // certify the game where Staller moves first.
        Player::Staller if first == Player::Staller => opening_staller(&game, &solver),
        Player::Staller => None,
    }
}

/// The η or ω Staller dispatcher; it covers the S-game and Dominator's losing openings.
fn opening_staller(game: &Arc<Game>, solver: &Arc<Solver>) -> Option<Box<dyn Strategy>> {
    if let Ok(s) = eta_staller(game.clone(), solver.clone()) {
        return Some(Box::new(s));
    }
    omega_staller(game.clone(), solver.clone()).ok().map(|s| Box::new(s) as Box<dyn Strategy>)
}

/// The engine's move for `role` at `pos`.
pub fn engine_move(game: &Arc<Game>, pos: &Position, role: Player, solver: &Arc<Solver>) -> Result<EngineMove, StrategyError> {
    let first = pos.history.first().map(|m| m.player).unwrap_or(pos.to_move);
    let strategy: Box<dyn Strategy> = match certified_strategy(game, role, first, solver) {
        Some(s) => s,
        None if role == Player::Staller => {
            if let Some(s) = opening_staller(game, solver) {
                let d = s.decide(pos)?;
                return Ok(EngineMove { vertex: d.vertex, source: s.name(), fallback: d.fallback });
            }
            let remark = RemarkStaller::new(game.clone(), solver.clone());
            match remark.plan(pos) {
                Ok(Some(_)) => Box::new(remark),
                _ => Box::new(SolverStrategy::new(game.clone(), solver.clone(), role)),
            }
        }
        None => Box::new(SolverStrategy::new(game.clone(), solver.clone(), role)),
    };
    let d = strategy.decide(pos)?;
    Ok(EngineMove { vertex: d.vertex, source: strategy.name(), fallback: d.fallback })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, eta};

    #[test]
    fn cycle_uses_a_pairing() {
        let game = Arc::new(Game::new(cycle(4)));
        let solver = Arc::new(Solver::default());
        let s = certified_strategy(&game, Player::Dominator, Player::Staller, &solver).unwrap();
        assert!(s.name().contains("pairing"), "{}", s.name());
        let p = game.apply_move(&game.start(Player::Staller), 0).unwrap();
        let m = engine_move(&game, &p, Player::Dominator, &solver).unwrap();
        assert_eq!(m.vertex, 2);
    }

    #[test]
    fn eta_dominator_opens_on_h1() {
        let game = Arc::new(Game::new(eta()));
        let solver = Arc::new(Solver::default());
        let m = engine_move(&game, &game.start(Player::Dominator), Player::Dominator, &solver).unwrap();
        assert_eq!(m.vertex, game.graph.v("h1"));
        assert!(!m.fallback);
    }
}
