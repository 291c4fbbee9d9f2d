use std::sync::Arc;

use super::{check_turn, lowest_free, Decision, Strategy, StrategyError};
use crate::game::{Game, Player, Position};
use crate::graph::raw_triangles;

/// Dominator's second-player strategy on the triangular prism.
///
/// Answer Staller's first vertex `x` with a vertex `y` of the other triangle not adjacent
/// to `x`. Then take `y`'s rung partner if it is free, otherwise the last vertex of `y`'s
/// triangle not adjacent to `x`, and finally one of `x`'s rung partner and the remaining
/// vertex of `x`'s triangle.
pub struct PrismStrategy {
    game: Arc<Game>,
    triangles: [[usize; 3]; 2],
    rung: [usize; 6],
}

impl PrismStrategy {
    pub fn new(game: Arc<Game>) -> Result<Self, StrategyError> {
        let g = &game.graph;
        let tris = raw_triangles(g);
        if g.n() != 6 || !g.is_cubic() || tris.len() != 2 || tris[0].iter().any(|v| tris[1].contains(v)) {
            return Err(StrategyError::OffFamily("not the triangular prism".into()));
        }
        let mut rung = [0; 6];
        for v in 0..6 {
            let own = if tris[0].contains(&v) { tris[0] } else { tris[1] };
            rung[v] = g.neighbors(v).iter().copied().find(|u| !own.contains(u)).unwrap();
        }
        Ok(PrismStrategy { game, triangles: [tris[0], tris[1]], rung })
    }

    fn triangle_of(&self, v: usize) -> [usize; 3] {
        if self.triangles[0].contains(&v) {
            self.triangles[0]
        } else {
            self.triangles[1]
        }
    }

    fn plan(&self, pos: &Position) -> Option<usize> {
        let s: Vec<usize> = pos.moves_of(Player::Staller).collect();
        let d: Vec<usize> = pos.moves_of(Player::Dominator).collect();
        let x = *s.first()?;
        let opposite: Vec<usize> = self.triangle_of(self.rung[x]).into_iter().filter(|&v| v != self.rung[x]).collect();
        let free = |v: usize| pos.is_free(v);
        match d.len() {
            0 => opposite.into_iter().find(|&v| free(v)),
            1 => {
                let y = d[0];
                let key = self.rung[y];
                if free(key) {
                    return Some(key);
                }
                opposite.into_iter().find(|&v| v != y && free(v))
            }
            _ => {
                let key = self.rung[d[0]];
                let third = self.triangle_of(x).into_iter().find(|&v| v != x && v != key)?;
                [self.rung[x], third].into_iter().find(|&v| free(v))
            }
        }
    }
}

impl Strategy for PrismStrategy {
    fn name(&self) -> String {
        "triangular prism strategy".into()
    }

    fn role(&self) -> Player {
        Player::Dominator
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        check_turn(&self.game, pos, Player::Dominator)?;
        if pos.staller.is_empty() {
            return Err(StrategyError::Precondition("this strategy answers Staller; wrap it to move first".into()));
        }
        match self.plan(pos) {
            Some(v) => Ok(Decision::planned(v)),
            None => lowest_free(pos).map(Decision::fallback),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, generalized_petersen};

    #[test]
    fn first_answer_is_opposite_and_not_adjacent() {
        let game = Arc::new(Game::new(generalized_petersen(3, 1).unwrap()));
        let s = PrismStrategy::new(game.clone()).unwrap();
        for x in 0..6 {
            let p = game.start(Player::Staller).play(x).unwrap();
            let y = s.next_move(&p).unwrap();
            assert!(!s.triangle_of(x).contains(&y));
            assert!(!game.graph.neighbors(x).contains(&y));
        }
    }

    #[test]
    fn rejects_other_graphs() {
        assert!(PrismStrategy::new(Arc::new(Game::new(cycle(6)))).is_err());
    }
}
