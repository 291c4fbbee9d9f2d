use std::sync::Arc;

use super::{check_turn, hash_of, Decision, Strategy, StrategyError};
use crate::game::{Game, Player, Position};

/// Lets a second-player Dominator strategy move first.
///
/// Dominator opens with an extra vertex and from then on follows the inner strategy on
/// the position without that vertex. When the inner strategy asks for the extra vertex,
/// Dominator already owns it and claims a fresh extra instead. An extra claim never
/// hurts Dominator, so the inner guarantee carries over.
pub struct FirstMoveAdapter<S: Strategy> {
    game: Arc<Game>,
    inner: S,
}

struct Replay {
    extra: usize,
    virtual_pos: Position,
}

fn bad_history(e: impl std::fmt::Display) -> StrategyError {
    StrategyError::Precondition(format!("history does not follow the adapter: {e}"))
}

impl<S: Strategy> FirstMoveAdapter<S> {
    pub fn new(game: Arc<Game>, inner: S) -> Result<Self, StrategyError> {
        if inner.role() != Player::Dominator {
            return Err(StrategyError::Precondition("first-move adapter wraps Dominator strategies".into()));
        }
        Ok(FirstMoveAdapter { game, inner })
    }

    fn opened_first(pos: &Position) -> bool {
        pos.history.first().map_or(pos.to_move == Player::Dominator, |m| m.player == Player::Dominator)
    }

    /// Rebuilds the current extra vertex and the virtual second-player position.
    fn replay(&self, pos: &Position) -> Result<Replay, StrategyError> {
        let mut moves = pos.history.iter();
        let extra0 = moves.next().ok_or_else(|| bad_history("no opening move"))?.vertex;
        let mut extra = extra0;
        let mut virt = Position::new(pos.n, Player::Staller);
        for m in moves {
            if m.player == Player::Dominator {
                let want = self.inner.next_move(&virt)?;
                if want == extra {
                    virt = virt.play(extra).map_err(bad_history)?;
                    extra = m.vertex;
                    continue;
                }
            }
            virt = virt.play(m.vertex).map_err(bad_history)?;
        }
        Ok(Replay { extra, virtual_pos: virt })
    }
}

impl<S: Strategy> Strategy for FirstMoveAdapter<S> {
    fn name(&self) -> String {
        format!("first-move adapter around {}", self.inner.name())
    }

    fn role(&self) -> Player {
        Player::Dominator
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        check_turn(&self.game, pos, Player::Dominator)?;
        if !Self::opened_first(pos) {
            return self.inner.decide(pos);
        }
        let fresh = || pos.free().first().map(Decision::planned).ok_or(StrategyError::NoMove);
        if pos.history.is_empty() {
            return fresh();
        }
        let r = self.replay(pos)?;
        let want = self.inner.decide(&r.virtual_pos)?;
        if want.vertex == r.extra {
            return fresh();
        }
        Ok(want)
    }

    fn context_key(&self, pos: &Position) -> u64 {
        if !Self::opened_first(pos) || pos.history.is_empty() {
            return self.inner.context_key(pos);
        }
        match self.replay(pos) {
            Ok(r) => hash_of(&(r.extra, self.inner.context_key(&r.virtual_pos))),
            Err(_) => hash_of(&pos.history),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;
    use crate::strategies::{find_pairing_plan, PairingStrategy};

    fn adapted() -> (Arc<Game>, FirstMoveAdapter<PairingStrategy>) {
        let game = Arc::new(Game::new(cycle(4)));
        let plan = find_pairing_plan(&game.graph).unwrap();
        let inner = PairingStrategy::new(game.clone(), plan).unwrap();
        (game.clone(), FirstMoveAdapter::new(game, inner).unwrap())
    }

    #[test]
    fn opens_then_answers_partners() {
        let (game, s) = adapted();
        let p = game.start(Player::Dominator);
        let extra = s.next_move(&p).unwrap();
        let p = p.play(extra).unwrap();
        // Staller takes a vertex of the other pair; Dominator answers with its partner.
        let x = (0..4).find(|&v| v != extra && v != (extra + 2) % 4).unwrap();
        let p = p.play(x).unwrap();
        assert_eq!(s.next_move(&p).unwrap(), (x + 2) % 4);
    }

    #[test]
    fn rejects_staller_strategies() {
        use crate::solver::{Solver, SolverConfig};
        use crate::strategies::SolverStrategy;
        let game = Arc::new(Game::new(cycle(4)));
        let st = SolverStrategy::new(game.clone(), Arc::new(Solver::new(SolverConfig::default())), Player::Staller);
        assert!(FirstMoveAdapter::new(game, st).is_err());
    }
}
