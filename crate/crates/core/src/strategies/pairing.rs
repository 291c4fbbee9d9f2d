use std::sync::Arc;

use serde::Serialize;

use super::{check_turn, lowest_free, Decision, Strategy, StrategyError};
use crate::game::{Game, Player, Position, WinningSetSystem};
use crate::graph::{Graph, GraphError};
use crate::vset::VertexSet;

/// Disjoint vertex pairs such that every winning set contains both vertices of a pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingPlan {
    pub pairs: Vec<(usize, usize)>,
    /// For each distinct winning set (in system order), the index of a pair inside it.
    pub coverage: Vec<usize>,
}

impl PairingPlan {
    /// Builds a plan from pairs, computing coverage; `None` if some set is uncovered
    /// or the pairs overlap.
    pub fn from_pairs(sets: &WinningSetSystem, pairs: Vec<(usize, usize)>) -> Option<Self> {
        let mut used = VertexSet::EMPTY;
        for &(a, b) in &pairs {
            if a == b || used.contains(a) || used.contains(b) {
                return None;
            }
            used.insert(a);
            used.insert(b);
        }
        let coverage = sets
            .members()
            .map(|s| pairs.iter().position(|&(a, b)| s.contains(a) && s.contains(b)))
            .collect::<Option<Vec<_>>>()?;
        Some(PairingPlan { pairs, coverage })
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn members(&self) -> VertexSet {
        self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

pub fn verify_pairing_plan(g: &Graph, plan: &PairingPlan) -> bool {
    let sets = WinningSetSystem::from_graph(g);
    match PairingPlan::from_pairs(&sets, plan.pairs.clone()) {
        Some(p) => p.coverage.len() == plan.coverage.len(),
        None => false,
    }
}

/// Exhaustive search for a pairing plan. `None` means no plan exists.
pub fn find_pairing_plan(g: &Graph) -> Option<PairingPlan> {
    let system = WinningSetSystem::from_graph(g);
    let mut sets: Vec<VertexSet> = system.members().collect();
    sets.sort_by_key(|s| (s.len(), s.0));
    if sets.iter().any(|s| s.len() < 2) {
        return None;
    }

    fn search(sets: &[VertexSet], used: VertexSet, pairs: &mut Vec<(usize, usize)>) -> bool {
        let open = sets
            .iter()
            .find(|s| !pairs.iter().any(|&(a, b)| s.contains(a) && s.contains(b)));
        let Some(&s) = open else {
            return true;
        };
        let avail = s.difference(used).to_vec();
        for i in 0..avail.len() {
            for j in i + 1..avail.len() {
                let (a, b) = (avail[i], avail[j]);
                pairs.push((a, b));
                let mut u = used;
                u.insert(a);
                u.insert(b);
                if search(sets, u, pairs) {
                    return true;
                }
                pairs.pop();
            }
        }
        false
    }

    let mut pairs = Vec::new();
    if search(&sets, VertexSet::EMPTY, &mut pairs) {
        pairs.sort_unstable();
        PairingPlan::from_pairs(&system, pairs)
    } else {
        None
    }
}

/// The plan `(u_i, v_{i-1})` for the prism `GP(n, 1)`.
pub fn gp1_pairing_plan(g: &Graph) -> Result<PairingPlan, GraphError> {
    let n = g.n() / 2;
    let expected = crate::graph::generalized_petersen(n, 1)?;
    if g.edges() != expected.edges() {
        return Err(GraphError::InvalidParameter("graph is not GP(n,1) in generator labeling".into()));
    }
    let pairs = (0..n).map(|i| (i, n + (i + n - 1) % n)).collect();
    PairingPlan::from_pairs(&WinningSetSystem::from_graph(g), pairs)
        .ok_or_else(|| GraphError::InvalidParameter("pairing does not cover every set".into()))
}

/// Dominator answers every Staller claim inside a pair with its partner.
pub struct PairingStrategy {
    game: Arc<Game>,
    plan: PairingPlan,
}

impl PairingStrategy {
    pub fn new(game: Arc<Game>, plan: PairingPlan) -> Result<Self, StrategyError> {
        if PairingPlan::from_pairs(&game.sets, plan.pairs.clone()).is_none() {
            return Err(StrategyError::Precondition("pairing plan does not cover every winning set".into()));
        }
        Ok(PairingStrategy { game, plan })
    }

    pub fn plan(&self) -> &PairingPlan {
        &self.plan
    }

    /// The move rule, independent of game status so that partitions can reuse it.
    pub(crate) fn choose(&self, pos: &Position) -> Result<usize, StrategyError> {
        let free = pos.free();
        // A pair Staller has entered whose partner is still free: answer it.
        let pending = self
            .plan
            .pairs
            .iter()
            .filter_map(|&(a, b)| {
                if pos.staller.contains(a) && free.contains(b) {
                    Some(b)
                } else if pos.staller.contains(b) && free.contains(a) {
                    Some(a)
                } else {
                    None
                }
            })
            .min();
        if let Some(v) = pending {
            return Ok(v);
        }
        let members = self.plan.members();
        if pos.staller.is_empty() {
            if let Some(v) = free.difference(members).first() {
                return Ok(v);
            }
            return lowest_free(pos);
        }
        let untouched = self
            .plan
            .pairs
            .iter()
            .filter(|&&(a, b)| free.contains(a) && free.contains(b))
            .map(|&(a, b)| a.min(b))
            .min();
        match untouched {
            Some(v) => Ok(v),
            None => lowest_free(pos),
        }
    }
}

impl Strategy for PairingStrategy {
    fn name(&self) -> String {
        format!("pairing strategy on {} pairs", self.plan.pairs.len())
    }

    fn role(&self) -> Player {
        Player::Dominator
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        check_turn(&self.game, pos, Player::Dominator)?;
        self.choose(pos).map(Decision::planned)
    }

    fn context_key(&self, _pos: &Position) -> u64 {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, generalized_petersen, necklace, star, NecklaceKind};

    #[test]
    fn c4_plan() {
        let plan = find_pairing_plan(&cycle(4)).unwrap();
        assert_eq!(plan.pairs, vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn star_has_no_plan() {
        assert!(find_pairing_plan(&star(3)).is_none());
    }

    #[test]
    fn diamond_necklace_plan_has_four_pairs() {
        let g = necklace(NecklaceKind::Diamond, 2).unwrap();
        let plan = find_pairing_plan(&g).unwrap();
        assert_eq!(plan.pairs.len(), 4);
        assert!(verify_pairing_plan(&g, &plan));
    }

    #[test]
    fn gp71_answer() {
        let g = generalized_petersen(7, 1).unwrap();
        let plan = gp1_pairing_plan(&g).unwrap();
        let s = PairingStrategy::new(Arc::new(Game::new(g.clone())), plan).unwrap();
        let p = Position::new(g.n(), Player::Staller).play(g.v("u3")).unwrap();
        assert_eq!(s.next_move(&p).unwrap(), g.v("v2"));
    }
}
