use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{check_turn, hash_of, Decision, Strategy, StrategyError};
use crate::game::{Game, Player, Position};
use crate::solver::Solver;

/// One Staller move of a scripted line and the continuations keyed by Dominator's reply.
///
/// Labels refer to template vertices and are resolved through the script's vertex map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptNode {
    pub play: String,
    pub replies: Vec<(Vec<String>, ScriptNode)>,
    /// Taken for any reply not listed, including moves outside the template.
    pub on_other: Option<Box<ScriptNode>>,
}

impl ScriptNode {
    pub fn new(play: &str) -> Self {
        ScriptNode { play: play.to_string(), replies: Vec::new(), on_other: None }
    }

    pub fn on(mut self, replies: &[&str], next: ScriptNode) -> Self {
        self.replies.push((replies.iter().map(|s| s.to_string()).collect(), next));
        self
    }

    pub fn otherwise(mut self, next: ScriptNode) -> Self {
        self.on_other = Some(Box::new(next));
        self
    }

    /// Every label mentioned anywhere in the tree.
    pub fn labels(&self) -> Vec<&str> {
        let mut out = vec![self.play.as_str()];
        for (keys, child) in &self.replies {
            out.extend(keys.iter().map(String::as_str));
            out.extend(child.labels());
        }
        if let Some(o) = &self.on_other {
            out.extend(o.labels());
        }
        out
    }

    /// Renames labels, e.g. to conjugate a script by a symmetry.
    pub fn relabel(&self, f: &dyn Fn(&str) -> String) -> ScriptNode {
        ScriptNode {
            play: f(&self.play),
            replies: self
                .replies
                .iter()
                .map(|(keys, c)| (keys.iter().map(|k| f(k)).collect(), c.relabel(f)))
                .collect(),
            on_other: self.on_other.as_ref().map(|o| Box::new(o.relabel(f))),
        }
    }

    fn child(&self, reply: Option<&str>) -> Option<(usize, &ScriptNode)> {
        if let Some(r) = reply {
            if let Some(i) = self.replies.iter().position(|(keys, _)| keys.iter().any(|k| k == r)) {
                return Some((i, &self.replies[i].1));
            }
        }
        self.on_other.as_deref().map(|o| (usize::MAX, o))
    }
}

/// Where the script stands after replaying the history.
struct Cursor<'a> {
    node: Option<&'a ScriptNode>,
    path: Vec<usize>,
}

/// A scripted Staller strategy.
///
/// Each turn Staller first completes any winning set that needs a single vertex, then
/// follows the tree. Outside the tree she falls back to the solver and the decision is
/// flagged, so gaps in the case table show up in validation reports.
pub struct ScriptStrategy {
    name: String,
    game: Arc<Game>,
    tree: ScriptNode,
    to_host: BTreeMap<String, usize>,
    to_label: HashMap<usize, String>,
    solver: Arc<Solver>,
}

impl ScriptStrategy {
    pub fn new(
        name: impl Into<String>,
        game: Arc<Game>,
        tree: ScriptNode,
        map: BTreeMap<String, usize>,
        solver: Arc<Solver>,
    ) -> Result<Self, StrategyError> {
        for l in tree.labels() {
            match map.get(l) {
                Some(&v) if v < game.n() => {}
                _ => return Err(StrategyError::Precondition(format!("script label {l} is not mapped onto the board"))),
            }
        }
        // Where two labels share a host vertex the lexicographically first one names it.
        let mut to_label = HashMap::new();
        for (k, &v) in &map {
            to_label.entry(v).or_insert_with(|| k.clone());
        }
        Ok(ScriptStrategy { name: name.into(), game, tree, to_host: map, to_label, solver })
    }

    /// Uses the host graph's own labels as the template labels.
    pub fn on_labels(name: impl Into<String>, game: Arc<Game>, tree: ScriptNode, solver: Arc<Solver>) -> Result<Self, StrategyError> {
        let map = (0..game.n()).filter_map(|v| game.graph.label(v).map(|l| (l.to_string(), v))).collect();
        Self::new(name, game, tree, map, solver)
    }

    fn host(&self, label: &str) -> usize {
        self.to_host[label]
    }

    fn locate(&self, pos: &Position) -> Cursor<'_> {
        let mut cur = Cursor { node: Some(&self.tree), path: Vec::new() };
        let mut awaiting = false;
        for m in &pos.history {
            let Some(node) = cur.node else { break };
            match m.player {
                Player::Staller => {
                    if m.vertex == self.host(&node.play) {
                        awaiting = true;
                    } else {
                        cur.node = None;
                    }
                }
                Player::Dominator if awaiting => {
                    awaiting = false;
                    let reply = self.to_label.get(&m.vertex).map(String::as_str);
                    match node.child(reply) {
                        Some((i, child)) => {
                            cur.path.push(i);
                            cur.node = Some(child);
                        }
                        None => cur.node = None,
                    }
                }
                Player::Dominator => {}
            }
        }
        if awaiting {
            // Staller already played this node but Dominator has not answered; cannot
            // happen on Staller's turn in alternating play.
            cur.node = None;
        }
        cur
    }
}

/// Lowest vertex completing a live winning set, if any.
pub(crate) fn win_now(game: &Game, pos: &Position) -> Option<usize> {
    game.sets.residual(pos).into_iter().filter(|s| s.len() == 1).filter_map(|s| s.first()).min()
}

impl Strategy for ScriptStrategy {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn role(&self) -> Player {
        Player::Staller
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        check_turn(&self.game, pos, Player::Staller)?;
        if let Some(v) = win_now(&self.game, pos) {
            return Ok(Decision::planned(v));
        }
        if let Some(node) = self.locate(pos).node {
            let v = self.host(&node.play);
            if pos.is_free(v) {
                return Ok(Decision::planned(v));
            }
        }
        Ok(Decision::fallback(self.solver.best_response(&self.game, pos)?))
    }

    fn context_key(&self, pos: &Position) -> u64 {
        let c = self.locate(pos);
        hash_of(&(c.node.is_some(), c.path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;
    use crate::graph::cycle;
    use crate::solver::SolverConfig;

    fn c4_map() -> BTreeMap<String, usize> {
        ["a", "b", "c", "d"].iter().enumerate().map(|(i, l)| (l.to_string(), i)).collect()
    }

    fn solver() -> Arc<Solver> {
        Arc::new(Solver::new(SolverConfig::default()))
    }

    #[test]
    fn relabel_touches_every_label() {
        let t = ScriptNode::new("a").on(&["b"], ScriptNode::new("c")).otherwise(ScriptNode::new("d"));
        let r = t.relabel(&|l| l.to_uppercase());
        assert_eq!(r.labels(), vec!["A", "B", "C", "D"]);
    }

    #[test]
    fn unmapped_label_is_rejected() {
        let game = Arc::new(Game::new(cycle(4)));
        let t = ScriptNode::new("a").on(&["zz"], ScriptNode::new("b"));
        assert!(ScriptStrategy::new("s", game, t, c4_map(), solver()).is_err());
    }

    #[test]
    fn follows_tree_then_falls_back() {
        let game = Arc::new(Game::new(cycle(4)));
        let t = ScriptNode::new("a").on(&["b"], ScriptNode::new("c"));
        let s = ScriptStrategy::new("s", game.clone(), t, c4_map(), solver()).unwrap();
        let p = game.start(Player::Staller);
        assert_eq!(s.decide(&p).unwrap(), Decision::planned(0));
        let scripted = p.play(0).unwrap().play(1).unwrap();
        assert_eq!(s.decide(&scripted).unwrap(), Decision::planned(2));
        let off = p.play(0).unwrap().play(2).unwrap();
        assert!(s.decide(&off).unwrap().fallback);
    }
}
