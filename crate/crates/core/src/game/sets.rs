use serde::Serialize;

use super::{GameStatus, Position};
use crate::graph::Graph;
use crate::vset::VertexSet;

/// One distinct winning set and every vertex whose open neighbourhood it is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WinningSet {
    pub watched: Vec<usize>,
    pub members: VertexSet,
}

/// Staller's winning sets, deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WinningSetSystem {
    sets: Vec<WinningSet>,
}

impl WinningSetSystem {
    /// Groups `(watched, members)` pairs by members, keeping first-appearance order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, VertexSet)>) -> Self {
        let mut sets: Vec<WinningSet> = Vec::new();
        for (w, m) in pairs {
            match sets.iter_mut().find(|s| s.members == m) {
                Some(s) => s.watched.push(w),
                None => sets.push(WinningSet { watched: vec![w], members: m }),
            }
        }
        WinningSetSystem { sets }
    }

    /// The open neighbourhood of every vertex.
    pub fn from_graph(g: &Graph) -> Self {
        Self::from_pairs((0..g.n()).map(|v| (v, g.neighbor_set(v))))
    }

    /// Open neighbourhoods of `targets` only, as used for gadget sub-games.
    pub fn for_targets(g: &Graph, targets: impl IntoIterator<Item = usize>) -> Self {
        Self::from_pairs(targets.into_iter().map(|v| (v, g.neighbor_set(v))))
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[WinningSet] {
        &self.sets
    }

    pub fn members(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.sets.iter().map(|s| s.members)
    }

    /// Sets not yet hit by Dominator.
    pub fn live<'a>(&'a self, p: &'a Position) -> impl Iterator<Item = &'a WinningSet> + 'a {
        self.sets.iter().filter(move |s| !s.members.intersects(p.dominator))
    }

    pub fn status(&self, p: &Position) -> GameStatus {
        let mut any_live = false;
        for s in self.live(p) {
            if s.members.is_subset(p.staller) {
                return GameStatus::StallerWon;
            }
            any_live = true;
        }
        if !any_live {
            return GameStatus::DominatorWon;
        }
        assert!(
            !p.free().is_empty(),
            "board is full with a live, incomplete winning set; ownership is inconsistent"
        );
        GameStatus::Ongoing
    }

    /// Drops hit sets and shrinks each live set to the vertices Staller still needs.
    pub fn reduce(&self, p: &Position) -> WinningSetSystem {
        let mut out: Vec<WinningSet> = Vec::new();
        for s in self.live(p) {
            let needed = s.members.difference(p.staller);
            match out.iter_mut().find(|o| o.members == needed) {
                Some(o) => o.watched.extend(&s.watched),
                None => out.push(WinningSet { watched: s.watched.clone(), members: needed }),
            }
        }
        WinningSetSystem { sets: out }
    }

    /// Needed parts of the live sets, without provenance.
    pub fn residual(&self, p: &Position) -> Vec<VertexSet> {
        self.live(p).map(|s| s.members.difference(p.staller)).collect()
    }

    /// Union of all winning sets: the vertices that matter at all.
    pub fn support(&self) -> VertexSet {
        self.sets.iter().fold(VertexSet::EMPTY, |acc, s| acc.union(s.members))
    }
}
