use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{validate_strategy, Adversary, Verdict};
use crate::game::{Game, OutcomeClass, Player, Position};
use crate::graph::{find_factor, generate_family, FactorKind, Graph};
use crate::solver::{ClassifyError, Solver, SolverConfig};
use crate::strategies::gadgets::find_gadget_among;
use crate::strategies::tau::{tau_certificate, tau_graph, verify_certificate};
use crate::strategies::{
    eta_dominator, eta_staller, find_pairing_plan, gp1_pairing_plan, omega_dominator, omega_staller,
    BipartiteCirculantStrategy, FirstMoveAdapter, GadgetEmbedding, GadgetStaller, GadgetTemplate, PairingStrategy,
    PartitionStrategy, PrismStrategy, RemarkStaller, Strategy, StrategyError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    /// Opening remarks: `K1`, `K_n`, `C4`, `GP(5,2)`.
    Prelim,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    #[serde(rename = "GP1-claim")]
    Gp1Claim,
    Remark,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::Prelim,
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::L1,
        TheoremId::L2,
        TheoremId::L3,
        TheoremId::L4,
        TheoremId::L5,
        TheoremId::L6,
        TheoremId::Gp1Claim,
        TheoremId::Remark,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Prelim => "Prelim",
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::T5 => "T5",
            TheoremId::T6 => "T6",
            TheoremId::L1 => "L1",
            TheoremId::L2 => "L2",
            TheoremId::L3 => "L3",
            TheoremId::L4 => "L4",
            TheoremId::L5 => "L5",
            TheoremId::L6 => "L6",
            TheoremId::Gp1Claim => "GP1-claim",
            TheoremId::Remark => "Remark",
        }
    }
}

impl std::str::FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theorem id {s:?}"))
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A graph family with parameters, or a standalone gadget (`G1`, `G2/x2`, `tau`, ...).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub family: String,
    #[serde(default)]
    pub params: Vec<usize>,
}

impl Instance {
    pub fn new(family: &str, params: &[usize]) -> Self {
        Instance { family: family.into(), params: params.to_vec() }
    }

    pub fn gadget(&self) -> Result<Option<GadgetTemplate>, String> {
        let t = match self.family.as_str() {
            "G1" => GadgetTemplate::g1(),
            "G2" => GadgetTemplate::g2(None).map_err(|e| e.to_string())?,
            f if f.starts_with("G2/") => GadgetTemplate::g2(Some(&f[3..])).map_err(|e| e.to_string())?,
            "G3" => GadgetTemplate::g3(),
            "G4" => GadgetTemplate::g4(),
            "three-claws" => GadgetTemplate::three_claws(),
            "tau" => GadgetTemplate::tau(),
            _ => return Ok(None),
        };
        Ok(Some(t))
    }

    /// The game: the template game for gadgets, the full graph game otherwise.
    pub fn game(&self) -> Result<(Game, Option<GadgetTemplate>), String> {
        if let Some(t) = self.gadget()? {
            return Ok((t.game(), Some(t)));
        }
        let g = generate_family(&self.family, &self.params).map_err(|e| e.to_string())?;
        g.ensure_board_size().map_err(|e| e.to_string())?;
        Ok((Game::new(g), None))
    }
}

impl std::fmt::Display for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.params.is_empty() {
            f.write_str(&self.family)
        } else {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, "{}({})", self.family, ps.join(","))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    /// Pairing plan found by search.
    Pairing,
    /// The `(u_i, v_{i-1})` plan on `GP(n,1)`.
    Gp1Pairing,
    /// Diamond factor, each diamond answered by its own pairing.
    DiamondPartition,
    /// Two-claw necklace split into two 4-cycles.
    ClawPartition,
    Circulant,
    Prism,
    EtaDominator,
    EtaStaller,
    OmegaDominator,
    OmegaStaller,
    /// The scripted strategy of a standalone gadget instance.
    Gadget,
    /// Find a free gadget after Dominator's opening and play it.
    Remark,
}

impl StrategyKind {
    pub fn role(self) -> Player {
        match self {
            StrategyKind::EtaStaller | StrategyKind::OmegaStaller | StrategyKind::Gadget | StrategyKind::Remark => {
                Player::Staller
            }
            _ => Player::Dominator,
        }
    }

    /// Builds the strategy; second-player Dominator strategies are wrapped to move
    /// first when `first` is Dominator.
    pub fn build(
        self,
        game: Arc<Game>,
        template: Option<&GadgetTemplate>,
        start: &Position,
        first: Player,
        solver: Arc<Solver>,
    ) -> Result<Box<dyn Strategy>, StrategyError> {
        fn boxed<S: Strategy + 'static>(s: S) -> Box<dyn Strategy> {
            Box::new(s)
        }
        let wrap = |s: Box<dyn Strategy>, game: Arc<Game>| -> Result<Box<dyn Strategy>, StrategyError> {
            if first == Player::Dominator {
                Ok(boxed(FirstMoveAdapter::new(game, s)?))
            } else {
                Ok(s)
            }
        };
        let off = |what: &str| StrategyError::OffFamily(what.to_string());
        Ok(match self {
            StrategyKind::Pairing => {
                let plan = find_pairing_plan(&game.graph).ok_or_else(|| off("no pairing plan"))?;
                boxed(PairingStrategy::new(game, plan)?)
            }
            StrategyKind::Gp1Pairing => {
                let plan = gp1_pairing_plan(&game.graph).map_err(|e| off(&e.to_string()))?;
                boxed(PairingStrategy::new(game, plan)?)
            }
            StrategyKind::DiamondPartition => {
                let f = find_factor(&game.graph, FactorKind::Diamond).ok_or_else(|| off("no diamond factor"))?;
                wrap(boxed(PartitionStrategy::with_pairings(game.clone(), f.parts)?), game)?
            }
            StrategyKind::ClawPartition => {
                let g = &game.graph;
                let parts = [["x1", "t1", "y1", "y2"], ["z1", "z2", "t2", "x2"]]
                    .iter()
                    .map(|p| p.iter().map(|l| g.vertex_by_label(l).ok_or_else(|| off("not a two-claw necklace"))).collect())
                    .collect::<Result<Vec<Vec<usize>>, _>>()?;
                wrap(boxed(PartitionStrategy::with_pairings(game.clone(), parts)?), game)?
            }
            StrategyKind::Circulant => wrap(boxed(BipartiteCirculantStrategy::new(game.clone())?), game)?,
            StrategyKind::Prism => wrap(boxed(PrismStrategy::new(game.clone())?), game)?,
            StrategyKind::EtaDominator => boxed(eta_dominator(game, solver)?),
            StrategyKind::EtaStaller => boxed(eta_staller(game, solver)?),
            StrategyKind::OmegaDominator => boxed(omega_dominator(game, solver)?),
            StrategyKind::OmegaStaller => boxed(omega_staller(game, solver)?),
            StrategyKind::Gadget => {
                let t = template.ok_or_else(|| off("instance is not a gadget"))?;
                boxed(GadgetStaller::new(game, GadgetEmbedding::identity(t), t.clone(), start, solver)?)
            }
            StrategyKind::Remark => boxed(RemarkStaller::new(game, solver)),
        })
    }
}

/// What a case asserts about its instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Check {
    /// Outcome class by exact solving of both games.
    Class { class: OutcomeClass },
    /// D-game winner after each listed Dominator opening.
    DominatorOpenings { winning: Vec<String>, losing: Vec<String> },
    /// A strategy for its role wins from the given opening against the adversary.
    Strategy {
        strategy: StrategyKind,
        first: Player,
        #[serde(default)]
        opening: Vec<String>,
        adversary: Adversary,
    },
    /// Every Dominator opening leaves a free τ, and τ's certificate verifies.
    TauAvoidsEveryOpening,
    /// Deliberately wrong class, for harness self-tests: expects the stated class.
    #[serde(skip)]
    Never,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCase {
    pub id: String,
    pub theorem: TheoremId,
    /// Acceptance group: `outcome-table`, `strategy-validation` or `tau`.
    pub group: String,
    pub instance: Instance,
    pub check: Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Solver,
    StrategyVsExhaustive,
    StrategyVsSolver,
    StrategyVsRandom,
    EmbeddingSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub theorem: TheoremId,
    pub group: String,
    pub instance: String,
    pub expected: String,
    pub observed: String,
    pub method: Method,
    pub nodes: u64,
    pub fallbacks: u64,
    pub elapsed_ms: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub verdict: Verdict,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub cases: Vec<CaseReport>,
}

fn labels_to_vertices(g: &Graph, labels: &[String]) -> Result<Vec<usize>, String> {
    labels.iter().map(|l| g.vertex_by_label(l).ok_or_else(|| format!("no vertex labeled {l}"))).collect()
}

/// Runs one case with its own solver.
pub fn run_case(case: &TheoremCase, cfg: &SolverConfig) -> CaseReport {
    let began = Instant::now();
    let solver = Arc::new(Solver::new(cfg.clone()));
    let mut r = CaseReport {
        id: case.id.clone(),
        theorem: case.theorem,
        group: case.group.clone(),
        instance: case.instance.to_string(),
        expected: String::new(),
        observed: String::new(),
        method: Method::Solver,
        nodes: 0,
        fallbacks: 0,
        elapsed_ms: 0,
        verdict: Verdict::Pass,
        detail: None,
    };
    if let Err(e) = evaluate(case, &solver, &mut r) {
        // Running out of budget decides nothing either way.
        r.verdict = if e.contains("budget exhausted") { Verdict::Inconclusive } else { Verdict::Fail };
        r.detail = Some(e);
    }
    r.elapsed_ms = began.elapsed().as_millis() as u64;
    r
}

fn evaluate(case: &TheoremCase, solver: &Arc<Solver>, r: &mut CaseReport) -> Result<(), String> {
    let (game, template) = case.instance.game()?;
    let game = Arc::new(game);
    match &case.check {
        Check::Class { class } => {
            r.expected = class.to_string();
            match solver.classify_outcome(&game) {
                Ok(o) => {
                    r.observed = o.class.to_string();
                    r.verdict = if o.class == *class { Verdict::Pass } else { Verdict::Fail };
                }
                Err(ClassifyError::Unknown(e)) => {
                    r.observed = "unknown".into();
                    r.verdict = Verdict::Inconclusive;
                    r.detail = Some(e.to_string());
                }
                Err(e) => return Err(e.to_string()),
            }
        }
        Check::Never => {
            r.expected = "never".into();
            r.observed = "checked".into();
            r.verdict = Verdict::Fail;
        }
        Check::DominatorOpenings { winning, losing } => {
            r.expected = format!("Dominator wins after {winning:?}, loses after {losing:?}");
            let start = game.start(Player::Dominator);
            let mut wrong = Vec::new();
            for (labels, want) in [(winning, Player::Dominator), (losing, Player::Staller)] {
                for (l, v) in labels.iter().zip(labels_to_vertices(&game.graph, labels)?) {
                    let got = solver.winner(&game, &start.play(v).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                    if got != want {
                        wrong.push(format!("{l}: {got} wins"));
                    }
                }
            }
            r.observed = if wrong.is_empty() { "as expected".into() } else { wrong.join(", ") };
            r.verdict = if wrong.is_empty() { Verdict::Pass } else { Verdict::Fail };
        }
        Check::Strategy { strategy, first, opening, adversary } => {
            r.method = match adversary {
                Adversary::Exhaustive => Method::StrategyVsExhaustive,
                Adversary::SolverBest => Method::StrategyVsSolver,
                Adversary::Random { .. } => Method::StrategyVsRandom,
            };
            let role = strategy.role();
            r.expected = format!("{role} wins");
            let mut start = match &template {
                Some(t) => t.setup(&game, *first),
                None => game.start(*first),
            };
            for v in labels_to_vertices(&game.graph, opening)? {
                start = start.play(v).map_err(|e| e.to_string())?;
            }
            let s = strategy.build(game.clone(), template.as_ref(), &start, *first, solver.clone()).map_err(|e| e.to_string())?;
            let v = validate_strategy(s.as_ref(), &game, &start, *adversary, solver);
            r.fallbacks = v.fallbacks;
            r.nodes = v.explored;
            r.verdict = v.verdict;
            r.observed = match v.verdict {
                Verdict::Pass => format!("{role} wins"),
                Verdict::Fail => format!("{} wins", role.other()),
                Verdict::Inconclusive => "unknown".into(),
            };
            r.detail = match (&v.counterexample, v.detail) {
                (Some(line), _) => Some(format!(
                    "losing line {:?}",
                    line.iter().map(|&x| game.graph.display_name(x)).collect::<Vec<_>>()
                )),
                (None, d) => d,
            };
        }
        Check::TauAvoidsEveryOpening => {
            r.method = Method::EmbeddingSearch;
            r.expected = "τ embedding avoiding every opening; certificate verifies".into();
            verify_certificate(&tau_graph(), &tau_certificate(), solver).map_err(|e| e.to_string())?;
            let tau = [GadgetTemplate::tau()];
            let start = game.start(Player::Dominator);
            let missing: Vec<String> = (0..game.n())
                .filter(|&d1| {
                    let p = start.play(d1).expect("empty board");
                    find_gadget_among(&tau, &game.graph, &p).map_or(true, |e| e.vertices.contains(d1))
                })
                .map(|v| game.graph.display_name(v))
                .collect();
            r.nodes = game.n() as u64;
            r.observed = if missing.is_empty() { "found for all".into() } else { format!("missing after {missing:?}") };
            r.verdict = if missing.is_empty() { Verdict::Pass } else { Verdict::Fail };
        }
    }
    Ok(())
}

/// Runs all cases in parallel; reports are ordered by case id.
pub fn run_campaign(suite: &[TheoremCase], out: Option<&Path>, cfg: &SolverConfig) -> std::io::Result<CampaignSummary> {
    let mut cases: Vec<CaseReport> = suite.par_iter().map(|c| run_case(c, cfg)).collect();
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    let count = |v: Verdict| cases.iter().filter(|c| c.verdict == v).count();
    let summary = CampaignSummary {
        verdict: cases.iter().fold(Verdict::Pass, |acc, c| acc.and(c.verdict)),
        passed: count(Verdict::Pass),
        failed: count(Verdict::Fail),
        inconclusive: count(Verdict::Inconclusive),
        cases,
    };
    if let Some(path) = out {
        std::fs::write(path, serde_json::to_string_pretty(&summary).expect("report serializes") + "\n")?;
        std::fs::write(path.with_extension("txt"), render_text(&summary))?;
    }
    Ok(summary)
}

pub fn render_text(s: &CampaignSummary) -> String {
    let mut out = String::new();
    for c in &s.cases {
        let _ = write!(out, "{:<13} {:<42} {:<20} expected {:<12} observed {:<12}", c.verdict, c.id, c.instance, c.expected, c.observed);
        if c.fallbacks > 0 {
            let _ = write!(out, " fallbacks {}", c.fallbacks);
        }
        if let Some(d) = &c.detail {
            let _ = write!(out, " ({d})");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{}: {} passed, {} failed, {} inconclusive", s.verdict, s.passed, s.failed, s.inconclusive);
    out
}

fn class_case(theorem: TheoremId, family: &str, params: &[usize], class: OutcomeClass) -> TheoremCase {
    let instance = Instance::new(family, params);
    TheoremCase {
        id: format!("{theorem}/class/{instance}"),
        theorem,
        group: "outcome-table".into(),
        instance,
        check: Check::Class { class },
    }
}

fn strategy_case(
    theorem: TheoremId,
    family: &str,
    params: &[usize],
    strategy: StrategyKind,
    first: Player,
    opening: &[&str],
    adversary: Adversary,
) -> TheoremCase {
    let instance = Instance::new(family, params);
    let mut id = format!("{theorem}/{}/{instance}/{}-first", serde_json::to_value(strategy).unwrap().as_str().unwrap(), first);
    if !opening.is_empty() {
        id.push_str(&format!("/{}", opening.join("-")));
    }
    if let Adversary::Random { seed, .. } = adversary {
        id.push_str(&format!("/random-{seed}"));
    } else if adversary == Adversary::SolverBest {
        id.push_str("/solver");
    }
    TheoremCase {
        id,
        theorem,
        group: "strategy-validation".into(),
        instance,
        check: Check::Strategy { strategy, first, opening: opening.iter().map(|s| s.to_string()).collect(), adversary },
    }
}

const BOTH: [Player; 2] = [Player::Dominator, Player::Staller];

/// Cases for one theorem; `params` overrides the default parameter range where the
/// theorem is about a parametrised family.
pub fn cases_for(theorem: TheoremId, params: &[usize]) -> Vec<TheoremCase> {
    use OutcomeClass::{D, N, S};
    use StrategyKind as K;
    let ex = Adversary::Exhaustive;
    let or = |default: &[usize]| if params.is_empty() { default.to_vec() } else { params.to_vec() };
    let mut v = Vec::new();
    match theorem {
        TheoremId::Prelim => {
            v.push(class_case(theorem, "cycle", &[4], D));
            v.push(class_case(theorem, "complete", &[1], S));
            v.push(class_case(theorem, "complete", &[4], D));
            v.push(class_case(theorem, "complete", &[5], D));
            v.push(class_case(theorem, "gp", &[5, 2], S));
        }
        TheoremId::T1 => {
            for d in or(&[2, 3]) {
                v.push(class_case(theorem, "diamond-necklace", &[d], D));
            }
            for d in or(&[2, 3, 4]) {
                for first in BOTH {
                    v.push(strategy_case(theorem, "diamond-necklace", &[d], K::DiamondPartition, first, &[], ex));
                }
            }
        }
        TheoremId::T2 => {
            v.push(class_case(theorem, "prism", &[], D));
            v.push(class_case(theorem, "truncated-k4", &[], S));
            for first in BOTH {
                v.push(strategy_case(theorem, "prism", &[], K::Prism, first, &[], ex));
            }
        }
        TheoremId::T3 => {
            v.push(class_case(theorem, "two-triangles-diamond", &[], S));
        }
        TheoremId::T4 => {
            for n in or(&[6, 7, 8]) {
                v.push(class_case(theorem, "gp", &[n, 2], S));
            }
            for n in or(&[9, 10, 11, 12]) {
                v.push(TheoremCase {
                    id: format!("{theorem}/tau/gp({n},2)"),
                    theorem,
                    group: "tau".into(),
                    instance: Instance::new("gp", &[n, 2]),
                    check: Check::TauAvoidsEveryOpening,
                });
                v.push(strategy_case(theorem, "gp", &[n, 2], K::Remark, Player::Dominator, &[], Adversary::SolverBest));
                v.push(strategy_case(theorem, "gp", &[n, 2], K::Remark, Player::Dominator, &[], Adversary::Random { seed: 7, count: 20 }));
            }
        }
        TheoremId::T5 => {
            for m in or(&[3, 4, 5, 6, 7]) {
                v.push(class_case(theorem, "circulant", &[m], D));
            }
            for m in or(&[3, 4, 5, 6]) {
                for first in BOTH {
                    v.push(strategy_case(theorem, "circulant", &[m], K::Circulant, first, &[], ex));
                }
            }
        }
        TheoremId::T6 => {
            v.push(class_case(theorem, "claw-necklace", &[2], D));
            v.push(class_case(theorem, "claw-necklace", &[3], S));
            for first in BOTH {
                v.push(strategy_case(theorem, "claw-necklace", &[2], K::ClawPartition, first, &[], ex));
            }
            for k in or(&[4, 5]) {
                v.push(strategy_case(theorem, "claw-necklace", &[k], K::Remark, Player::Dominator, &[], ex));
            }
        }
        TheoremId::L1 => {
            v.push(strategy_case(theorem, "G1", &[], K::Gadget, Player::Dominator, &["u0"], ex));
            v.push(strategy_case(theorem, "G1", &[], K::Gadget, Player::Staller, &[], ex));
        }
        TheoremId::L2 => {
            for f in ["G2", "G2/x2", "G2/x3", "G2/z1", "G2/z2"] {
                v.push(strategy_case(theorem, f, &[], K::Gadget, Player::Staller, &[], ex));
            }
        }
        TheoremId::L3 => v.push(strategy_case(theorem, "G3", &[], K::Gadget, Player::Staller, &[], ex)),
        TheoremId::L4 => v.push(strategy_case(theorem, "G4", &[], K::Gadget, Player::Staller, &[], ex)),
        TheoremId::L5 => {
            for d1 in ["h1", "h3"] {
                v.push(strategy_case(theorem, "eta", &[], K::EtaDominator, Player::Dominator, &[d1], ex));
            }
            v.push(strategy_case(theorem, "eta", &[], K::EtaStaller, Player::Staller, &[], ex));
            for d1 in ["h2", "h4", "y1", "y2", "y3", "k1", "k2", "k3", "k4", "w1", "w2", "w3", "m1", "m2", "m3", "m4"] {
                v.push(strategy_case(theorem, "eta", &[], K::EtaStaller, Player::Dominator, &[d1], ex));
            }
        }
        TheoremId::L6 => {
            v.push(class_case(theorem, "omega", &[1], N));
            v.push(TheoremCase {
                id: format!("{theorem}/openings/omega(1)"),
                theorem,
                group: "outcome-table".into(),
                instance: Instance::new("omega", &[1]),
                check: Check::DominatorOpenings {
                    winning: vec!["a1".into()],
                    losing: ["z1@D1", "z2@D1", "z3@D1", "z4@D1"].map(String::from).to_vec(),
                },
            });
            for m in or(&[1, 2]) {
                v.push(strategy_case(theorem, "omega", &[m], K::OmegaDominator, Player::Dominator, &[], ex));
                v.push(strategy_case(theorem, "omega", &[m], K::OmegaStaller, Player::Staller, &[], ex));
                for d1 in ["z1@D1", "z2@D1", "z3@D1", "z4@D1"] {
                    v.push(strategy_case(theorem, "omega", &[m], K::OmegaStaller, Player::Dominator, &[d1], ex));
                }
            }
        }
        TheoremId::Gp1Claim => {
            for n in or(&[3, 4, 5, 6, 7]) {
                v.push(class_case(theorem, "gp", &[n, 1], D));
            }
            for n in or(&[3, 4, 5, 6, 7, 8, 9]) {
                for first in BOTH {
                    v.push(strategy_case(theorem, "gp", &[n, 1], K::Gp1Pairing, first, &[], ex));
                }
            }
        }
        TheoremId::Remark => {
            v.push(strategy_case(theorem, "three-claws", &[], K::Remark, Player::Staller, &[], ex));
            v.push(strategy_case(theorem, "G4", &[], K::Remark, Player::Staller, &[], ex));
        }
    }
    v
}

/// Every theorem with default parameters.
pub fn default_suite() -> Vec<TheoremCase> {
    TheoremId::ALL.into_iter().flat_map(|t| cases_for(t, &[])).collect()
}

/// Runs the cases of one theorem.
pub fn verify_theorem(theorem: TheoremId, params: &[usize], cfg: &SolverConfig) -> CampaignSummary {
    run_campaign(&cases_for(theorem, params), None, cfg).expect("no output path, no I/O")
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn case_ids_are_unique() {
        let suite = default_suite();
        let ids: HashSet<_> = suite.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), suite.len());
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert!("T9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn every_instance_builds() {
        for c in default_suite() {
            c.instance.game().unwrap_or_else(|e| panic!("{}: {e}", c.id));
        }
    }

    #[test]
    fn never_check_fails() {
        let case = TheoremCase {
            id: "self-test".into(),
            theorem: TheoremId::Prelim,
            group: "outcome-table".into(),
            instance: Instance::new("cycle", &[4]),
            check: Check::Never,
        };
        assert_eq!(run_case(&case, &SolverConfig::default()).verdict, Verdict::Fail);
    }
}
