//! Pairing strategies whose pairs depend on where Staller first enters each region.

use std::sync::Arc;

use super::staller::{Dispatch, Opening};
use super::{check_turn, hash_of, last_move_of, lowest_free, Decision, Strategy, StrategyError};
use crate::game::{Game, Player, Position};
use crate::graph::{eta, omega, Graph};
use crate::solver::Solver;
use crate::VertexSet;

/// Staller's first move in a region (outside the base pairs) and Dominator's answer.
#[derive(Clone, Debug)]
pub struct Trigger {
    pub staller: usize,
    pub answer: usize,
    /// Pairs that become active once this trigger fires.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Region {
    pub members: VertexSet,
    pub triggers: Vec<Trigger>,
}

/// Dominator pairing with fixed base pairs plus region-dependent responses.
///
/// When Staller's move fires a region trigger Dominator plays its answer. Otherwise he
/// claims the partner of Staller's move in an active pair. Spare moves go to an active
/// pair with both members free, then to the region, then anywhere.
#[derive(Clone, Debug)]
pub struct RegionPairing {
    name: String,
    game: Arc<Game>,
    base: Vec<(usize, usize)>,
    regions: Vec<Region>,
}

impl RegionPairing {
    pub fn new(name: impl Into<String>, game: Arc<Game>, base: Vec<(usize, usize)>, regions: Vec<Region>) -> Self {
        RegionPairing { name: name.into(), game, base, regions }
    }

    fn base_members(&self) -> VertexSet {
        VertexSet::from_iter(self.base.iter().flat_map(|&(a, b)| [a, b]))
    }

    /// For each region, the trigger fired by Staller's first move there, if any.
    fn fired(&self, pos: &Position) -> Vec<Option<usize>> {
        let base = self.base_members();
        self.regions
            .iter()
            .map(|r| {
                pos.moves_of(Player::Staller)
                    .find(|&v| r.members.contains(v) && !base.contains(v))
                    .and_then(|v| r.triggers.iter().position(|t| t.staller == v))
            })
            .collect()
    }

    fn active_pairs(&self, fired: &[Option<usize>]) -> Vec<(usize, usize)> {
        let mut pairs = self.base.clone();
        for (r, f) in self.regions.iter().zip(fired) {
            if let Some(i) = f {
                pairs.extend(r.triggers[*i].pairs.iter().copied());
            }
        }
        pairs
    }
}

impl Strategy for RegionPairing {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn role(&self) -> Player {
        Player::Dominator
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        check_turn(&self.game, pos, Player::Dominator)?;
        let fired = self.fired(pos);
        let pairs = self.active_pairs(&fired);
        let last = last_move_of(pos, Player::Staller);
        if let Some(s) = last {
            for (r, f) in self.regions.iter().zip(&fired) {
                if let Some(t) = f.map(|i| &r.triggers[i]) {
                    if t.staller == s && pos.is_free(t.answer) {
                        return Ok(Decision::planned(t.answer));
                    }
                }
            }
            let partner = pairs.iter().find_map(|&(a, b)| match () {
                _ if a == s => Some(b),
                _ if b == s => Some(a),
                _ => None,
            });
            if let Some(p) = partner.filter(|&p| pos.is_free(p)) {
                return Ok(Decision::planned(p));
            }
        }
        let open_pair = pairs
            .iter()
            .filter(|&&(a, b)| pos.is_free(a) && pos.is_free(b))
            .map(|&(a, b)| a.min(b))
            .min();
        if let Some(v) = open_pair {
            return Ok(Decision::planned(v));
        }
        let region = last.and_then(|s| self.regions.iter().find(|r| r.members.contains(s)));
        if let Some(v) = region.and_then(|r| r.members.intersection(pos.free()).first()) {
            return Ok(Decision::planned(v));
        }
        Ok(Decision::planned(lowest_free(pos)?))
    }

    fn context_key(&self, pos: &Position) -> u64 {
        hash_of(&(self.fired(pos), last_move_of(pos, Player::Staller)))
    }
}

fn region(g: &Graph, members: &[&str], triggers: &[(&str, &str, &[(&str, &str)])]) -> Region {
    Region {
        members: VertexSet::from_iter(members.iter().map(|l| g.v(l))),
        triggers: triggers
            .iter()
            .map(|&(s, a, ps)| Trigger {
                staller: g.v(s),
                answer: g.v(a),
                pairs: ps.iter().map(|&(x, y)| (g.v(x), g.v(y))).collect(),
            })
            .collect(),
    }
}

/// Swaps the two sides of η: `h1 <-> h3`, `Y <-> W`, `K <-> M`.
fn eta_mirror(l: &str) -> String {
    let (head, tail) = l.split_at(1);
    let head = match head {
        "y" => "w",
        "w" => "y",
        "k" => "m",
        "m" => "k",
        other => other,
    };
    match (head, tail) {
        ("h", "1") => "h3".into(),
        ("h", "3") => "h1".into(),
        _ => format!("{head}{tail}"),
    }
}

fn eta_pairing(game: Arc<Game>, mirror: bool) -> RegionPairing {
    let g = game.graph.clone();
    let f = |l: &str| if mirror { eta_mirror(l) } else { l.to_string() };
    let v = |l: &str| g.v(&f(l));
    let pairs = |ps: &[(&str, &str)]| ps.iter().map(|&(a, b)| (v(a), v(b))).collect::<Vec<_>>();
    let reg = |members: &[&str], triggers: &[(&str, &str, &[(&str, &str)])]| {
        let members: Vec<String> = members.iter().map(|l| f(l)).collect();
        Region {
            members: VertexSet::from_iter(members.iter().map(|l| g.v(l))),
            triggers: triggers
                .iter()
                .map(|&(s, a, ps)| Trigger { staller: v(s), answer: v(a), pairs: pairs(ps) })
                .collect(),
        }
    };
    let yk = reg(
        &["y1", "y2", "y3", "k1", "k2", "k3", "k4"],
        &[
            ("y1", "k1", &[("y2", "k3")]),
            ("y2", "y1", &[("k1", "k3")]),
            ("y3", "y1", &[("k1", "k3")]),
            ("k1", "k3", &[("y1", "y3")]),
            ("k3", "k1", &[("y1", "y2")]),
        ],
    );
    let hwm = reg(
        &["h2", "h3", "h4", "w1", "w2", "w3", "m1", "m2", "m3", "m4"],
        &[
            ("h3", "w1", &[("w2", "w3"), ("m1", "m3")]),
            ("w1", "m1", &[("w2", "m3"), ("w3", "h3")]),
            ("w2", "m3", &[("w1", "m1"), ("w3", "h3")]),
            ("w3", "m1", &[("w2", "h3"), ("w1", "m3")]),
            ("m1", "m3", &[("w1", "w3"), ("w2", "h3")]),
            ("m3", "m1", &[("w1", "w2"), ("w3", "h3")]),
        ],
    );
    let name = if mirror { "η pairing after h3" } else { "η pairing after h1" };
    RegionPairing::new(name, game.clone(), pairs(&[("k2", "k4"), ("h2", "h4"), ("m2", "m4")]), vec![yk, hwm])
}

fn same_graph(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edges() == b.edges() && (0..a.n()).all(|v| a.label(v) == b.label(v))
}

/// Dominator on η: opens on `h1` and answers by the region tables; an opening on `h3`
/// uses the mirrored tables.
pub fn eta_dominator(game: Arc<Game>, solver: Arc<Solver>) -> Result<Dispatch, StrategyError> {
    let g = game.graph.clone();
    if !same_graph(&g, &eta()) {
        return Err(StrategyError::OffFamily("graph is not η".into()));
    }
    let on = |l: &str| Opening::DominatorOn(VertexSet::singleton(g.v(l)));
    Ok(Dispatch::new("η Dominator", game.clone(), Player::Dominator, solver)
        .with_opening(g.v("h1"))
        .case(on("h1"), Arc::new(eta_pairing(game.clone(), false)))
        .case(on("h3"), Arc::new(eta_pairing(game.clone(), true))))
}

/// Dominator on ω: opens on `a1`, pairs inside every chain diamond and on `(a2, a3)`,
/// `(h2, h4)`, and answers Staller's entry into `B` and `H` by a table.
pub fn omega_dominator(game: Arc<Game>, solver: Arc<Solver>) -> Result<Dispatch, StrategyError> {
    let g = game.graph.clone();
    let m = (g.n().saturating_sub(10)) / 4;
    if m == 0 || !omega(m).map(|o| same_graph(&g, &o)).unwrap_or(false) {
        return Err(StrategyError::OffFamily("graph is not ω".into()));
    }
    let mut base = vec![(g.v("a2"), g.v("a3")), (g.v("h2"), g.v("h4"))];
    for i in 1..=m {
        let z = |j: usize| g.v(&format!("z{j}@D{i}"));
        base.push((z(1), z(3)));
        base.push((z(2), z(4)));
    }
    let bh = region(
        &g,
        &["b1", "b2", "b3", "h1", "h2", "h3", "h4"],
        &[
            ("b1", "h1", &[("b2", "h3")]),
            ("b2", "h1", &[("b1", "h3")]),
            ("b3", "h3", &[("b1", "h1")]),
            ("h1", "h3", &[("b1", "b3")]),
            ("h3", "h1", &[("b1", "b2")]),
        ],
    );
    let pairing = RegionPairing::new("ω pairing after a1", game.clone(), base, vec![bh]);
    Ok(Dispatch::new("ω Dominator", game.clone(), Player::Dominator, solver)
        .with_opening(g.v("a1"))
        .case(Opening::DominatorOn(VertexSet::singleton(g.v("a1"))), Arc::new(pairing)))
}
