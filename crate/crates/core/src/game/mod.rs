//! Game semantics: positions, winning sets, move application and outcome classes.

mod position;
mod sets;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{graph_from_json_value, graph_to_json_value, Graph, GraphError};
use crate::vset::VertexSet;

pub use position::{Move, Owner, Player, Position};
pub use sets::{WinningSet, WinningSetSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("vertex {vertex} out of range for a board of {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} is already claimed")]
    AlreadyClaimed(usize),
    #[error("vertex {0} is owned by both players")]
    DoubleOwnership(usize),
    #[error("the game is already over")]
    GameOver,
    #[error("claim counts do not match alternating play")]
    Alternation,
    #[error("position is for a board of {position} vertices, graph has {graph}")]
    BoardMismatch { position: usize, graph: usize },
    #[error("Staller wins the D-game but Dominator wins the S-game, contradicting first-move advantage")]
    ContradictoryOutcome,
    #[error("transcript move {index} by {player} does not follow alternating play")]
    TranscriptOrder { index: usize, player: Player },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameStatus {
    Ongoing,
    DominatorWon,
    StallerWon,
}

impl GameStatus {
    pub fn winner(self) -> Option<Player> {
        match self {
            GameStatus::Ongoing => None,
            GameStatus::DominatorWon => Some(Player::Dominator),
            GameStatus::StallerWon => Some(Player::Staller),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutcomeClass {
    D,
    S,
    N,
}

impl std::fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OutcomeClass::D => "D",
            OutcomeClass::S => "S",
            OutcomeClass::N => "N",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub class: OutcomeClass,
    pub d_game_winner: Player,
    pub s_game_winner: Player,
}

impl Outcome {
    pub fn from_winners(d_game_winner: Player, s_game_winner: Player) -> Result<Outcome, GameError> {
        let class = match (d_game_winner, s_game_winner) {
            (Player::Dominator, Player::Dominator) => OutcomeClass::D,
            (Player::Staller, Player::Staller) => OutcomeClass::S,
            (Player::Dominator, Player::Staller) => OutcomeClass::N,
            (Player::Staller, Player::Dominator) => return Err(GameError::ContradictoryOutcome),
        };
        Ok(Outcome { class, d_game_winner, s_game_winner })
    }
}

/// A graph together with the winning sets played on it.
///
/// The usual game uses every open neighbourhood; gadget sub-games restrict the
/// winning sets to a few watched vertices via [`Game::with_targets`].
#[derive(Clone, Debug)]
pub struct Game {
    pub graph: Graph,
    pub sets: WinningSetSystem,
}

impl Game {
    pub fn new(graph: Graph) -> Self {
        let sets = WinningSetSystem::from_graph(&graph);
        Game { graph, sets }
    }

    pub fn with_targets(graph: Graph, targets: impl IntoIterator<Item = usize>) -> Self {
        let sets = WinningSetSystem::for_targets(&graph, targets);
        Game { graph, sets }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn start(&self, first: Player) -> Position {
        Position::new(self.graph.n(), first)
    }

    fn check_board(&self, p: &Position) -> Result<(), GameError> {
        if p.n != self.graph.n() {
            return Err(GameError::BoardMismatch { position: p.n, graph: self.graph.n() });
        }
        Ok(())
    }

    pub fn status(&self, p: &Position) -> GameStatus {
        self.sets.status(p)
    }

    pub fn legal_moves(&self, p: &Position) -> VertexSet {
        if self.status(p) != GameStatus::Ongoing {
            return VertexSet::EMPTY;
        }
        p.free()
    }

    pub fn apply_move(&self, p: &Position, v: usize) -> Result<Position, GameError> {
        self.check_board(p)?;
        if self.status(p) != GameStatus::Ongoing {
            return Err(GameError::GameOver);
        }
        p.play(v)
    }

    /// Plays a whole line of moves from `p`.
    pub fn apply_line(&self, p: &Position, line: &[usize]) -> Result<Position, GameError> {
        line.iter().try_fold(p.clone(), |q, &v| self.apply_move(&q, v))
    }

    pub fn reduce(&self, p: &Position) -> WinningSetSystem {
        self.sets.reduce(p)
    }
}

/// A recorded game: graph, first player, moves and final status.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub graph: serde_json::Value,
    pub first: Player,
    pub moves: Vec<Move>,
    pub status: GameStatus,
}

impl Transcript {
    pub fn record(graph: &Graph, first: Player, p: &Position, status: GameStatus) -> Self {
        Transcript { graph: graph_to_json_value(graph), first, moves: p.history.clone(), status }
    }

    /// Rebuilds the game and position, checking every move for legality and order.
    pub fn replay(&self) -> Result<(Game, Position), GameError> {
        let game = Game::new(graph_from_json_value(self.graph.clone())?);
        let mut p = game.start(self.first);
        for (index, m) in self.moves.iter().enumerate() {
            if m.player != p.to_move {
                return Err(GameError::TranscriptOrder { index, player: m.player });
            }
            p = game.apply_move(&p, m.vertex)?;
        }
        Ok((game, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, generalized_petersen, star};

    #[test]
    fn k1_is_lost_before_any_move() {
        let g = Game::new(Graph::empty(1));
        assert_eq!(g.sets.len(), 1);
        assert!(g.sets.sets()[0].members.is_empty());
        assert_eq!(g.status(&g.start(Player::Dominator)), GameStatus::StallerWon);
    }

    #[test]
    fn c4_sets() {
        let g = Game::new(cycle(4));
        assert_eq!(g.sets.len(), 2);
        let watched: usize = g.sets.sets().iter().map(|s| s.watched.len()).sum();
        assert_eq!(watched, 4);
        let p = g.start(Player::Dominator);
        let p = g.apply_move(&p, 0).unwrap();
        assert_eq!(p.to_move, Player::Staller);
        assert_eq!(g.legal_moves(&p).len(), 3);
        assert_eq!(g.apply_move(&p, 0), Err(GameError::AlreadyClaimed(0)));
    }

    #[test]
    fn c4_dominator_hits_both_sets() {
        let g = Game::new(cycle(4));
        let p = Position::setup(4, [0, 1], [], Player::Staller).unwrap();
        assert_eq!(g.status(&p), GameStatus::DominatorWon);
        assert!(g.reduce(&p).is_empty());
        assert_eq!(g.apply_move(&p, 2), Err(GameError::GameOver));
    }

    #[test]
    fn star_center_isolated() {
        let g = Game::new(star(3));
        let p = Position::setup(4, [], [1, 2, 3], Player::Dominator).unwrap();
        assert_eq!(g.status(&p), GameStatus::StallerWon);
    }

    #[test]
    fn petersen_starts_ongoing() {
        let g = Game::new(generalized_petersen(5, 2).unwrap());
        assert_eq!(g.status(&g.start(Player::Dominator)), GameStatus::Ongoing);
        assert_eq!(g.sets.len(), 10);
        assert!(g.sets.members().all(|s| s.len() == 3));
    }

    #[test]
    fn setup_rejects_shared_vertex() {
        assert_eq!(Position::setup(4, [1], [1], Player::Staller), Err(GameError::DoubleOwnership(1)));
    }

    #[test]
    fn contradictory_outcome_raises() {
        assert_eq!(
            Outcome::from_winners(Player::Staller, Player::Dominator),
            Err(GameError::ContradictoryOutcome)
        );
        assert_eq!(Outcome::from_winners(Player::Dominator, Player::Staller).unwrap().class, OutcomeClass::N);
    }

    #[test]
    fn transcript_roundtrip() {
        let g = cycle(4);
        let game = Game::new(g.clone());
        let p = game.apply_line(&game.start(Player::Staller), &[0, 2, 1, 3]).unwrap();
        let t = Transcript::record(&g, Player::Staller, &p, game.status(&p));
        let json = serde_json::to_string(&t).unwrap();
        let back: Transcript = serde_json::from_str(&json).unwrap();
        let (_, q) = back.replay().unwrap();
        assert_eq!(q, p);
    }
}
