//! Scripted Staller play on the gadgets, and the η / ω strategies that pick a script
//! from Dominator's opening.

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;

use super::gadgets::{find_gadget, GadgetEmbedding, GadgetId, GadgetTemplate};
use super::script::win_now;
use super::{check_turn, hash_of, Decision, ScriptNode, ScriptStrategy, SolverStrategy, Strategy, StrategyError};
use crate::game::{Game, Player, Position};
use crate::graph::{eta, omega, Graph};
use crate::solver::Solver;
use crate::VertexSet;

fn n(label: &str) -> ScriptNode {
    ScriptNode::new(label)
}

/// G1 with `u0` claimed by Dominator, or with `u0` free in the S-game.
pub fn g1_script() -> ScriptNode {
    n("v2")
        .on(&["u1"], n("v3").on(&["v0"], n("v1")))
        .on(&["u3"], n("v3").on(&["v0"], n("u2")))
        .on(&["v1"], n("v3").on(&["v0"], n("u1")))
        .otherwise(n("u3"))
}

/// G2 with `u1` already Staller's.
pub fn g2_script() -> ScriptNode {
    n("u2").on(&["z3"], n("v2").on(&["u3"], n("v1")))
}

/// G3 with `u1` already Staller's: a vertex-diamond trap.
pub fn g3_script() -> ScriptNode {
    n("z1").on(&["u3"], n("z3"))
}

/// G4, Staller moving first.
pub fn g4_script() -> ScriptNode {
    n("y1")
        .on(&["y2", "y3", "y4"], n("u1").on(&["u3"], n("z1").on(&["u2"], n("z3"))))
        .otherwise(n("y3"))
}

/// Three consecutive claws centred at `t2`, `t3`, `t4`.
pub fn three_claws_script() -> ScriptNode {
    n("t3")
        .on(&["x2", "t2", "x3"], n("z4").on(&["z2"], n("y4")))
        .on(&["y2", "y3"], n("z4").on(&["z2"], n("x4")))
        .on(&["z2", "z3"], n("x4").on(&["x2"], n("y4")))
        .on(&["x4", "t4"], n("z2").on(&["z4"], n("y2")))
        .on(&["y4"], n("z2").on(&["z4"], n("x2")))
        .on(&["z4"], n("x2").on(&["x4"], n("y2")))
        .otherwise(n("z4").on(&["z2"], n("y4")))
}

/// η after Dominator opened on `h2`.
fn eta_main_script() -> ScriptNode {
    let w1 = n("w1")
        .on(&["w2"], n("m1").on(&["w3"], n("m3")))
        .on(&["w3"], n("m3").on(&["w2"], n("m1")))
        .on(&["m1", "m2", "m4"], n("w2"))
        .on(&["m3"], n("w3"))
        .otherwise(n("w2"));
    n("k1")
        .on(&["k2", "k3", "k4"], n("y3").on(&["y1"], n("h1").on(&["y2"], n("h3").on(&["h4"], w1))))
        .otherwise(n("k3"))
}

/// ω with Dominator's opening inside the first chain diamond; `finish` follows `a1`.
fn omega_d_script(finish: ScriptNode) -> ScriptNode {
    let a1 = |forced: &str| n("a1").on(&[forced], finish.clone());
    n("b1")
        .on(&["b2"], n("h1").on(&["b3"], n("h3")))
        .on(&["b3"], n("h3").on(&["b2"], n("h1")))
        .on(&["h1", "h2", "h4"], n("b2").on(&["h3"], a1("b3")))
        .on(&["h3"], n("b3").on(&["h1"], a1("b2")))
        .otherwise(n("h1").on(&["b3"], n("h3")))
}

fn omega_s_script() -> ScriptNode {
    n("h1")
        .on(
            &["h2", "h3", "h4"],
            n("b1").on(
                &["b3"],
                n("z1@D1").on(&["z2@D1", "z3@D1", "z4@D1"], n("a3")).otherwise(n("z3@D1")),
            ),
        )
        .otherwise(n("h3"))
}

/// Template label to host vertex for a G4 placed on three named pieces of a host:
/// triangle `(u1, u2, u3)`, diamond `(y1..y4)`, diamond `(z1..z4)`.
fn g4_map(host: &Graph, u: [&str; 3], y: [&str; 4], z: [&str; 4]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for (i, l) in u.iter().enumerate() {
        m.insert(format!("u{}", i + 1), host.v(l));
    }
    for (i, l) in y.iter().enumerate() {
        m.insert(format!("y{}", i + 1), host.v(l));
    }
    for (i, l) in z.iter().enumerate() {
        m.insert(format!("z{}", i + 1), host.v(l));
    }
    m
}

enum GadgetPlay {
    Script(ScriptStrategy),
    /// Solver play inside the template, for gadgets without a hand-written script.
    Local { local: Game, image: Vec<usize> },
}

/// Staller's strategy for one embedded gadget; moves outside the gadget count as passes.
pub struct GadgetStaller {
    game: Arc<Game>,
    embedding: GadgetEmbedding,
    play: GadgetPlay,
    solver: Arc<Solver>,
}

impl GadgetStaller {
    /// Checks the gadget's setup against `pos`: Staller owns what the script assumes and
    /// Dominator owns none of the rest.
    pub fn new(game: Arc<Game>, embedding: GadgetEmbedding, template: GadgetTemplate, pos: &Position, solver: Arc<Solver>) -> Result<Self, StrategyError> {
        if embedding.id != template.id {
            return Err(StrategyError::Precondition(format!("embedding of {} used with template {}", embedding.id, template.id)));
        }
        for (label, &hv) in &embedding.map {
            let owned = template.staller_owned.contains(label);
            if owned && !pos.staller.contains(hv) {
                return Err(StrategyError::Precondition(format!("{label} must be Staller's")));
            }
            if !owned && template.required_free.contains(label) && !pos.is_free(hv) {
                return Err(StrategyError::Precondition(format!("{label} must be free")));
            }
        }
        let tree = match embedding.id {
            GadgetId::G1 => Some(g1_script()),
            GadgetId::G2 => Some(g2_script()),
            GadgetId::G3 => Some(g3_script()),
            GadgetId::G4 => Some(g4_script()),
            GadgetId::ThreeClaws => Some(three_claws_script()),
            _ => None,
        };
        let play = match tree {
            Some(tree) => GadgetPlay::Script(ScriptStrategy::new(
                format!("{} script", embedding.id),
                game.clone(),
                tree,
                embedding.map.clone(),
                solver.clone(),
            )?),
            None => {
                let image = (0..template.graph.n()).map(|tv| embedding.map[&template.graph.display_name(tv)]).collect();
                GadgetPlay::Local { local: template.game(), image }
            }
        };
        Ok(GadgetStaller { game, embedding, play, solver })
    }

    pub fn embedding(&self) -> &GadgetEmbedding {
        &self.embedding
    }
}

impl Strategy for GadgetStaller {
    fn name(&self) -> String {
        format!("{} gadget", self.embedding.id)
    }

    fn role(&self) -> Player {
        Player::Staller
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        match &self.play {
            GadgetPlay::Script(s) => s.decide(pos),
            GadgetPlay::Local { local, image } => {
                check_turn(&self.game, pos, Player::Staller)?;
                if let Some(v) = win_now(&self.game, pos) {
                    return Ok(Decision::planned(v));
                }
                let mut lp = local.start(Player::Staller);
                for (tv, &hv) in image.iter().enumerate() {
                    if pos.dominator.contains(hv) {
                        lp.dominator.insert(tv);
                    } else if pos.staller.contains(hv) {
                        lp.staller.insert(tv);
                    }
                }
                if local.status(&lp) == crate::game::GameStatus::Ongoing && !lp.free().is_empty() {
                    let r = self.solver.solve(local, &lp)?;
                    if r.winner == Player::Staller {
                        if let Some(tv) = r.best_move {
                            return Ok(Decision::planned(image[tv]));
                        }
                    }
                }
                Ok(Decision::fallback(self.solver.best_response(&self.game, pos)?))
            }
        }
    }

    fn context_key(&self, pos: &Position) -> u64 {
        match &self.play {
            GadgetPlay::Script(s) => s.context_key(pos),
            GadgetPlay::Local { .. } => 0,
        }
    }
}

/// Which games a [`Dispatch`] case covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Opening {
    /// Staller moved first.
    StallerFirst,
    /// Dominator moved first, on one of these vertices.
    DominatorOn(VertexSet),
}

/// Picks a sub-strategy from the game's first move. Unlisted openings fall back to the
/// solver and are flagged.
pub struct Dispatch {
    name: String,
    game: Arc<Game>,
    role: Player,
    opening: Option<usize>,
    cases: Vec<(Opening, Arc<dyn Strategy>)>,
    fallback: SolverStrategy,
}

impl Dispatch {
    pub fn new(name: impl Into<String>, game: Arc<Game>, role: Player, solver: Arc<Solver>) -> Self {
        let fallback = SolverStrategy::new(game.clone(), solver, role);
        Dispatch { name: name.into(), game, role, opening: None, cases: Vec::new(), fallback }
    }

    /// Dominator's own first move when he starts.
    pub fn with_opening(mut self, v: usize) -> Self {
        self.opening = Some(v);
        self
    }

    pub fn case(mut self, opening: Opening, s: Arc<dyn Strategy>) -> Self {
        self.cases.push((opening, s));
        self
    }

    fn select(&self, pos: &Position) -> Option<usize> {
        let first = pos.history.first();
        let staller_first = match first {
            None => pos.to_move == Player::Staller,
            Some(m) => m.player == Player::Staller,
        };
        self.cases.iter().position(|(o, _)| match (o, first) {
            (Opening::StallerFirst, _) => staller_first,
            (Opening::DominatorOn(set), Some(m)) => m.player == Player::Dominator && set.contains(m.vertex),
            _ => false,
        })
    }
}

impl Strategy for Dispatch {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn role(&self) -> Player {
        self.role
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        check_turn(&self.game, pos, self.role)?;
        if pos.history.is_empty() && self.role == Player::Dominator {
            if let Some(v) = self.opening.filter(|&v| pos.is_free(v)) {
                return Ok(Decision::planned(v));
            }
        }
        match self.select(pos) {
            Some(i) => self.cases[i].1.decide(pos),
            None => self.fallback.decide(pos).map(|d| Decision::fallback(d.vertex)),
        }
    }

    fn context_key(&self, pos: &Position) -> u64 {
        match self.select(pos) {
            Some(i) => hash_of(&(i, self.cases[i].1.context_key(pos))),
            None => hash_of(&usize::MAX),
        }
    }
}

fn same_graph(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edges() == b.edges() && (0..a.n()).all(|v| a.label(v) == b.label(v))
}

fn labels(g: &Graph, ls: &[&str]) -> VertexSet {
    VertexSet::from_iter(ls.iter().map(|l| g.v(l)))
}

/// Staller on η: the opening-`h2` line (mirrored for `h4`), and G4 on the far side of
/// `H` otherwise. Openings `h1`, `h3` are lost and fall back to the solver.
pub fn eta_staller(game: Arc<Game>, solver: Arc<Solver>) -> Result<Dispatch, StrategyError> {
    let g = game.graph.clone();
    if !same_graph(&g, &eta()) {
        return Err(StrategyError::OffFamily("graph is not η".into()));
    }
    let swap = |l: &str| match l {
        "h2" => "h4".to_string(),
        "h4" => "h2".to_string(),
        other => other.to_string(),
    };
    let main = ScriptStrategy::on_labels("η after h2", game.clone(), eta_main_script(), solver.clone())?;
    let mirrored = ScriptStrategy::on_labels("η after h4", game.clone(), eta_main_script().relabel(&swap), solver.clone())?;
    let far_w = g4_map(&g, ["w3", "w1", "w2"], ["h3", "h2", "h1", "h4"], ["m1", "m2", "m3", "m4"]);
    let far_y = g4_map(&g, ["y3", "y1", "y2"], ["h1", "h2", "h3", "h4"], ["k1", "k2", "k3", "k4"]);
    let on_w: Arc<dyn Strategy> =
        Arc::new(ScriptStrategy::new("G4 on W, H, M", game.clone(), g4_script(), far_w, solver.clone())?);
    let on_y = ScriptStrategy::new("G4 on Y, H, K", game.clone(), g4_script(), far_y, solver.clone())?;
    let yk = labels(&g, &["y1", "y2", "y3", "k1", "k2", "k3", "k4"]);
    let wm = labels(&g, &["w1", "w2", "w3", "m1", "m2", "m3", "m4"]);
    Ok(Dispatch::new("η Staller", game.clone(), Player::Staller, solver)
        .case(Opening::DominatorOn(labels(&g, &["h2"])), Arc::new(main))
        .case(Opening::DominatorOn(labels(&g, &["h4"])), Arc::new(mirrored))
        .case(Opening::DominatorOn(yk), on_w.clone())
        .case(Opening::DominatorOn(wm), Arc::new(on_y))
        .case(Opening::StallerFirst, on_w))
}

fn omega_chain_len(g: &Graph) -> Option<usize> {
    if g.n() < 14 || (g.n() - 10) % 4 != 0 {
        return None;
    }
    let m = (g.n() - 10) / 4;
    omega(m).ok().filter(|o| same_graph(g, o)).map(|_| m)
}

/// Staller on ω: the `b1` line after an opening in the first chain diamond, and the
/// `h1` line in the S-game. The opening `a1` is lost and falls back to the solver.
pub fn omega_staller(game: Arc<Game>, solver: Arc<Solver>) -> Result<Dispatch, StrategyError> {
    let g = game.graph.clone();
    let m = omega_chain_len(&g).ok_or_else(|| StrategyError::OffFamily("graph is not ω".into()))?;
    let s_game = ScriptStrategy::on_labels("ω S-game", game.clone(), omega_s_script(), solver.clone())?;
    let mut d = Dispatch::new("ω Staller", game.clone(), Player::Staller, solver.clone());
    if m == 1 {
        let side = ScriptStrategy::on_labels("ω after a side of D1", game.clone(), omega_d_script(n("a2")), solver.clone())?;
        let tip = ScriptStrategy::on_labels("ω after z3 of D1", game.clone(), omega_d_script(n("a3")), solver.clone())?;
        d = d
            .case(Opening::DominatorOn(labels(&g, &["z1@D1", "z2@D1", "z4@D1"])), Arc::new(side))
            .case(Opening::DominatorOn(labels(&g, &["z3@D1"])), Arc::new(tip));
    } else {
        let last = |j: usize| format!("z{j}@D{m}");
        let finish = n(&last(3)).on(&["a2"], n(&last(1)));
        let line = ScriptStrategy::on_labels("ω after D1", game.clone(), omega_d_script(finish), solver.clone())?;
        d = d.case(Opening::DominatorOn(labels(&g, &["z1@D1", "z2@D1", "z3@D1", "z4@D1"])), Arc::new(line));
    }
    Ok(d.case(Opening::StallerFirst, Arc::new(s_game)))
}

/// The Staller-win criterion made playable: after Dominator's opening (or on the empty
/// board) find a free G1, G4, three claws or τ and play it.
pub struct RemarkStaller {
    game: Arc<Game>,
    solver: Arc<Solver>,
    plans: DashMap<(u64, u64), Option<Arc<GadgetStaller>>>,
}

impl RemarkStaller {
    pub fn new(game: Arc<Game>, solver: Arc<Solver>) -> Self {
        RemarkStaller { game, solver, plans: DashMap::new() }
    }

    /// The position where the gadget is chosen.
    fn anchor(&self, pos: &Position) -> Position {
        let mut p = Position::new(pos.n, pos.to_move);
        if let Some(m) = pos.history.first().filter(|m| m.player == Player::Dominator) {
            p.dominator.insert(m.vertex);
        }
        p.to_move = Player::Staller;
        p
    }

    pub fn plan(&self, pos: &Position) -> Result<Option<Arc<GadgetStaller>>, StrategyError> {
        let a = self.anchor(pos);
        let key = (a.dominator.0, a.staller.0);
        if let Some(p) = self.plans.get(&key) {
            return Ok(p.clone());
        }
        let plan = match find_gadget(&self.game.graph, &a) {
            Some(e) => {
                let t = template_for(e.id)?;
                Some(Arc::new(GadgetStaller::new(self.game.clone(), e, t, &a, self.solver.clone())?))
            }
            None => None,
        };
        self.plans.insert(key, plan.clone());
        Ok(plan)
    }
}

fn template_for(id: GadgetId) -> Result<GadgetTemplate, StrategyError> {
    Ok(match id {
        GadgetId::G1 => GadgetTemplate::g1(),
        GadgetId::G3 => GadgetTemplate::g3(),
        GadgetId::G4 => GadgetTemplate::g4(),
        GadgetId::ThreeClaws => GadgetTemplate::three_claws(),
        GadgetId::Tau => GadgetTemplate::tau(),
        other => return Err(StrategyError::Precondition(format!("no standalone template for {other}"))),
    })
}

impl Strategy for RemarkStaller {
    fn name(&self) -> String {
        "gadget finder".into()
    }

    fn role(&self) -> Player {
        Player::Staller
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        check_turn(&self.game, pos, Player::Staller)?;
        match self.plan(pos)? {
            Some(g) => g.decide(pos),
            None => Ok(Decision::fallback(self.solver.best_response(&self.game, pos)?)),
        }
    }

    fn context_key(&self, pos: &Position) -> u64 {
        let a = self.anchor(pos);
        match self.plan(pos) {
            Ok(Some(g)) => hash_of(&(a.dominator.0, g.context_key(pos))),
            _ => hash_of(&a.dominator.0),
        }
    }
}
