use serde::{Deserialize, Serialize};

use super::GameError;
use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Dominator,
    Staller,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Dominator => Player::Staller,
            Player::Staller => Player::Dominator,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Player::Dominator => "dominator",
            Player::Staller => "staller",
        }
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Player {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "dominator" | "d" => Ok(Player::Dominator),
            "staller" | "s" => Ok(Player::Staller),
            _ => Err(format!("unknown player {s:?}, expected dominator or staller")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Owner {
    Free,
    Dominator,
    Staller,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub player: Player,
    pub vertex: usize,
}

/// Ownership of every vertex plus the side to move.
///
/// Positions reached by play carry their full history. Positions built directly with
/// [`Position::setup`] (mid-game configurations) have an empty history and only need
/// disjoint ownership.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    pub n: usize,
    pub dominator: VertexSet,
    pub staller: VertexSet,
    pub to_move: Player,
    pub history: Vec<Move>,
}

impl Position {
    pub fn new(n: usize, first: Player) -> Self {
        Position { n, dominator: VertexSet::EMPTY, staller: VertexSet::EMPTY, to_move: first, history: Vec::new() }
    }

    pub fn setup(
        n: usize,
        dominator: impl IntoIterator<Item = usize>,
        staller: impl IntoIterator<Item = usize>,
        to_move: Player,
    ) -> Result<Self, GameError> {
        let dominator = VertexSet::from_iter(dominator);
        let staller = VertexSet::from_iter(staller);
        let all = dominator.union(staller);
        if let Some(v) = all.iter().find(|&v| v >= n) {
            return Err(GameError::VertexOutOfRange { vertex: v, n });
        }
        if let Some(v) = dominator.intersection(staller).first() {
            return Err(GameError::DoubleOwnership(v));
        }
        Ok(Position { n, dominator, staller, to_move, history: Vec::new() })
    }

    pub fn owner(&self, v: usize) -> Owner {
        if self.dominator.contains(v) {
            Owner::Dominator
        } else if self.staller.contains(v) {
            Owner::Staller
        } else {
            Owner::Free
        }
    }

    pub fn owners(&self) -> Vec<Owner> {
        (0..self.n).map(|v| self.owner(v)).collect()
    }

    pub fn claimed(&self, p: Player) -> VertexSet {
        match p {
            Player::Dominator => self.dominator,
            Player::Staller => self.staller,
        }
    }

    pub fn free(&self) -> VertexSet {
        VertexSet::full(self.n).difference(self.dominator.union(self.staller))
    }

    pub fn is_free(&self, v: usize) -> bool {
        v < self.n && !self.dominator.contains(v) && !self.staller.contains(v)
    }

    /// Claims `v` for the side to move without checking whether the game is over.
    pub fn play(&self, v: usize) -> Result<Position, GameError> {
        if v >= self.n {
            return Err(GameError::VertexOutOfRange { vertex: v, n: self.n });
        }
        if !self.is_free(v) {
            return Err(GameError::AlreadyClaimed(v));
        }
        let mut next = self.clone();
        match self.to_move {
            Player::Dominator => next.dominator.insert(v),
            Player::Staller => next.staller.insert(v),
        }
        next.history.push(Move { player: self.to_move, vertex: v });
        next.to_move = self.to_move.other();
        Ok(next)
    }

    /// Moves of `p` in order.
    pub fn moves_of(&self, p: Player) -> impl Iterator<Item = usize> + '_ {
        self.history.iter().filter(move |m| m.player == p).map(|m| m.vertex)
    }

    /// Checks the claim-count balance expected from alternating play.
    pub fn check_alternation(&self) -> Result<(), GameError> {
        let first = self.history.first().map(|m| m.player).unwrap_or(self.to_move);
        let a = self.claimed(first).len();
        let b = self.claimed(first.other()).len();
        let expected_to_move = if a == b { first } else { first.other() };
        if a < b || a - b > 1 || expected_to_move != self.to_move {
            return Err(GameError::Alternation);
        }
        Ok(())
    }
}
