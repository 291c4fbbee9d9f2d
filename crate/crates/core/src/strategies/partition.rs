use std::sync::Arc;

use super::{check_turn, hash_of, last_move_of, lowest_free, Decision, PairingStrategy, Strategy, StrategyError};
use crate::game::{Game, Move, Player, Position};
use crate::vset::VertexSet;

/// Dominator splits the board into parts and answers inside the part Staller just
/// entered, using a second-player strategy certified on each part's induced subgraph.
pub struct PartitionStrategy {
    game: Arc<Game>,
    parts: Vec<Vec<usize>>,
    subs: Vec<Box<dyn Strategy>>,
    part_of: Vec<usize>,
}

impl PartitionStrategy {
    pub fn new(game: Arc<Game>, parts: Vec<Vec<usize>>, subs: Vec<Box<dyn Strategy>>) -> Result<Self, StrategyError> {
        if parts.len() != subs.len() {
            return Err(StrategyError::Precondition("every part needs a certified strategy".into()));
        }
        if let Some(s) = subs.iter().find(|s| s.role() != Player::Dominator) {
            return Err(StrategyError::Precondition(format!("{} is not a Dominator strategy", s.name())));
        }
        let n = game.n();
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n || part_of[v] != usize::MAX {
                    return Err(StrategyError::Precondition("parts must be disjoint vertex sets".into()));
                }
                part_of[v] = i;
            }
        }
        if part_of.contains(&usize::MAX) {
            return Err(StrategyError::Precondition("parts must cover every vertex".into()));
        }
        Ok(PartitionStrategy { game, parts, subs, part_of })
    }

    /// Certifies each part with a pairing plan on its induced subgraph.
    pub fn with_pairings(game: Arc<Game>, parts: Vec<Vec<usize>>) -> Result<Self, StrategyError> {
        let mut subs: Vec<Box<dyn Strategy>> = Vec::new();
        for part in &parts {
            let local = game.graph.induced(part);
            let plan = super::find_pairing_plan(&local).ok_or_else(|| {
                StrategyError::Precondition(format!("no pairing certifies part {part:?}"))
            })?;
            subs.push(Box::new(PairingStrategy::new(Arc::new(Game::new(local)), plan)?));
        }
        Self::new(game, parts, subs)
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    fn local_position(&self, i: usize, pos: &Position) -> Position {
        let part = &self.parts[i];
        let local = |s: VertexSet| -> VertexSet {
            part.iter().enumerate().filter(|&(_, &v)| s.contains(v)).map(|(j, _)| j).collect()
        };
        let history = pos
            .history
            .iter()
            .filter(|m| self.part_of[m.vertex] == i)
            .map(|m| Move { player: m.player, vertex: part.iter().position(|&v| v == m.vertex).unwrap() })
            .collect();
        Position {
            n: part.len(),
            dominator: local(pos.dominator),
            staller: local(pos.staller),
            to_move: Player::Dominator,
            history,
        }
    }

    fn play_in(&self, i: usize, pos: &Position) -> Option<usize> {
        let local = self.local_position(i, pos);
        if local.free().is_empty() {
            return None;
        }
        let v = match self.subs[i].next_move(&local) {
            Ok(v) if local.is_free(v) => v,
            _ => local.free().first()?,
        };
        Some(self.parts[i][v])
    }
}

impl Strategy for PartitionStrategy {
    fn name(&self) -> String {
        format!("partition strategy on {} parts", self.parts.len())
    }

    fn role(&self) -> Player {
        Player::Dominator
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        check_turn(&self.game, pos, Player::Dominator)?;
        if let Some(x) = last_move_of(pos, Player::Staller) {
            if let Some(v) = self.play_in(self.part_of[x], pos) {
                return Ok(Decision::planned(v));
            }
        }
        // Parts where Staller is ahead owe an answer; otherwise any part with room.
        let owing = (0..self.parts.len()).find(|&i| {
            let l = self.local_position(i, pos);
            l.staller.len() > l.dominator.len() && !l.free().is_empty()
        });
        let order = owing.into_iter().chain(0..self.parts.len());
        for i in order {
            if let Some(v) = self.play_in(i, pos) {
                return Ok(Decision::planned(v));
            }
        }
        lowest_free(pos).map(Decision::planned)
    }

    fn context_key(&self, pos: &Position) -> u64 {
        let subs: Vec<u64> = (0..self.parts.len())
            .map(|i| self.subs[i].context_key(&self.local_position(i, pos)))
            .collect();
        hash_of(&(last_move_of(pos, Player::Staller), subs))
    }
}
