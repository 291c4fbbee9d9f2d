use std::sync::Arc;

use super::{check_turn, hash_of, last_move_of, lowest_free, Decision, Strategy, StrategyError};
use crate::game::{Game, Player, Position};
use crate::graph::bipartite_circulant;

/// Dominator's second-player strategy on the cubic bipartite circulant
/// `u_i ~ v_i, v_{i+1}, v_{i+2}`.
///
/// * If Staller's move leaves her two of the three neighbours of some vertex, take the
///   third (the other common neighbour of the consecutive pair she is attacking).
/// * Otherwise answer `x_l` with `x_{l-1}`, or `x_{l+1}` if that is taken.
/// * Otherwise take a free neighbour of one of Dominator's vertices, or any free vertex.
pub struct BipartiteCirculantStrategy {
    game: Arc<Game>,
    m: usize,
}

impl BipartiteCirculantStrategy {
    pub fn new(game: Arc<Game>) -> Result<Self, StrategyError> {
        let m = game.n() / 2;
        let expected = bipartite_circulant(m).map_err(|e| StrategyError::OffFamily(e.to_string()))?;
        if game.n() % 2 != 0 || expected.edges() != game.graph.edges() {
            return Err(StrategyError::OffFamily("graph is not a bipartite circulant in generator labeling".into()));
        }
        Ok(BipartiteCirculantStrategy { game, m })
    }

    /// Side (0 = U, 1 = V) and index of a vertex.
    fn split(&self, v: usize) -> (usize, usize) {
        (v / self.m, v % self.m)
    }

    fn vertex(&self, side: usize, i: usize) -> usize {
        side * self.m + (i % self.m)
    }

    /// After Staller's move `x`, two of the three consecutive neighbours of some vertex
    /// on the other side may be hers with the third free: the two she holds are common
    /// neighbours of a consecutive pair, and Dominator takes the remaining one.
    fn common_neighbour_reply(&self, pos: &Position, x: usize) -> Option<usize> {
        let g = &self.game.graph;
        g.neighbors(x)
            .iter()
            .filter_map(|&w| {
                let set = g.neighbor_set(w);
                let free = set.intersection(pos.free());
                (!set.intersects(pos.dominator) && free.len() == 1).then(|| free.first()).flatten()
            })
            .min()
    }
}

impl Strategy for BipartiteCirculantStrategy {
    fn name(&self) -> String {
        format!("bipartite circulant strategy (m={})", self.m)
    }

    fn role(&self) -> Player {
        Player::Dominator
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        check_turn(&self.game, pos, Player::Dominator)?;
        let Some(x) = last_move_of(pos, Player::Staller) else {
            return Err(StrategyError::Precondition("this strategy answers Staller; wrap it to move first".into()));
        };
        if let Some(c) = self.common_neighbour_reply(pos, x) {
            return Ok(Decision::planned(c));
        }
        let (side, l) = self.split(x);
        for cand in [self.vertex(side, l + self.m - 1), self.vertex(side, l + 1)] {
            if pos.is_free(cand) {
                return Ok(Decision::planned(cand));
            }
        }
        let near = pos
            .dominator
            .iter()
            .flat_map(|d| self.game.graph.neighbors(d).to_vec())
            .filter(|&v| pos.is_free(v))
            .min();
        match near {
            Some(v) => Ok(Decision::planned(v)),
            None => lowest_free(pos).map(Decision::planned),
        }
    }

    fn context_key(&self, pos: &Position) -> u64 {
        hash_of(&last_move_of(pos, Player::Staller))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opening_reply_is_previous_index() {
        let g = bipartite_circulant(5).unwrap();
        let s = BipartiteCirculantStrategy::new(Arc::new(Game::new(g.clone()))).unwrap();
        let p = Position::new(10, Player::Staller).play(g.v("u2")).unwrap();
        assert_eq!(s.next_move(&p).unwrap(), g.v("u1"));
    }
}
