//! Gadget templates and the embedding search behind the Staller-win criterion.
//!
//! A gadget's winning sets are the neighbourhoods of its interior vertices (template
//! degree 3). An embedding must reproduce each interior neighbourhood exactly in the
//! host, so every such set is also a winning set of the host game. Host edges between
//! non-interior vertices are unconstrained.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::game::{Game, Position};
use crate::graph::{eta, omega, Graph, GraphError};
use crate::graph::generators::Builder;
use crate::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GadgetId {
    G1,
    G2,
    G3,
    G4,
    H1,
    H2,
    Diamond,
    #[serde(rename = "three-claws")]
    ThreeClaws,
    #[serde(rename = "tau")]
    Tau,
    #[serde(rename = "eta")]
    Eta,
    #[serde(rename = "omega")]
    Omega,
}

impl GadgetId {
    pub fn as_str(self) -> &'static str {
        match self {
            GadgetId::G1 => "G1",
            GadgetId::G2 => "G2",
            GadgetId::G3 => "G3",
            GadgetId::G4 => "G4",
            GadgetId::H1 => "H1",
            GadgetId::H2 => "H2",
            GadgetId::Diamond => "diamond",
            GadgetId::ThreeClaws => "three-claws",
            GadgetId::Tau => "tau",
            GadgetId::Eta => "eta",
            GadgetId::Omega => "omega",
        }
    }
}

impl fmt::Display for GadgetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GadgetId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            GadgetId::G1,
            GadgetId::G2,
            GadgetId::G3,
            GadgetId::G4,
            GadgetId::H1,
            GadgetId::H2,
            GadgetId::Diamond,
            GadgetId::ThreeClaws,
            GadgetId::Tau,
            GadgetId::Eta,
            GadgetId::Omega,
        ]
        .into_iter()
        .find(|id| id.as_str().eq_ignore_ascii_case(s))
        .ok_or_else(|| format!("unknown gadget {s:?}"))
    }
}

/// A labeled template graph plus the setup its script assumes.
#[derive(Clone, Debug)]
pub struct GadgetTemplate {
    pub id: GadgetId,
    pub graph: Graph,
    pub interior: VertexSet,
    /// Labels Staller must already own when the script starts.
    pub staller_owned: Vec<String>,
    /// Labels that must be free when the script starts.
    pub required_free: Vec<String>,
    /// Extra names for template vertices, used when two of the gadget's named vertices
    /// coincide in the host (the `v` vertex of G2).
    pub aliases: Vec<(String, String)>,
}

impl GadgetTemplate {
    fn from_graph(id: GadgetId, graph: Graph) -> Self {
        let interior = VertexSet::from_iter((0..graph.n()).filter(|&v| graph.degree(v) == 3));
        let required_free = (0..graph.n()).map(|v| graph.display_name(v)).collect();
        GadgetTemplate { id, graph, interior, staller_owned: Vec::new(), required_free, aliases: Vec::new() }
    }

    /// The standalone game on the template: interior neighbourhoods only.
    pub fn game(&self) -> Game {
        Game::with_targets(self.graph.clone(), self.interior.iter())
    }

    /// Standalone starting position with the template's setup applied.
    pub fn setup(&self, game: &Game, first: crate::game::Player) -> Position {
        let mut p = game.start(first);
        for l in &self.staller_owned {
            p.staller.insert(self.graph.v(l));
        }
        p
    }

    /// Label to template vertex, including aliases.
    pub fn labels(&self) -> BTreeMap<String, usize> {
        let mut m: BTreeMap<String, usize> =
            (0..self.graph.n()).map(|v| (self.graph.display_name(v), v)).collect();
        for (alias, target) in &self.aliases {
            m.insert(alias.clone(), self.graph.v(target));
        }
        m
    }

    pub fn g1() -> Self {
        let mut b = Builder::default();
        let u = b.triangle(["u1", "u2", "u3"]);
        let v = b.triangle(["v1", "v2", "v3"]);
        let u0 = b.vertex("u0");
        let v0 = b.vertex("v0");
        b.edge(u0, u[0]);
        b.edge(v0, v[0]);
        b.edge(u[1], v[1]);
        b.edge(u[2], v[2]);
        let mut t = Self::from_graph(GadgetId::G1, b.build());
        // Dominator may already hold u0.
        t.required_free.retain(|l| l != "u0");
        t
    }

    /// `merge` names the vertex that the neighbour `v` of `v3` coincides with, if any.
    pub fn g2(merge: Option<&str>) -> Result<Self, GraphError> {
        if let Some(m) = merge {
            if !["x2", "x3", "z1", "z2"].contains(&m) {
                return Err(GraphError::InvalidParameter(format!("v cannot coincide with {m}")));
            }
        }
        let mut b = Builder::default();
        let x = b.triangle(["x1", "x2", "x3"]);
        let u = b.triangle(["u1", "u2", "u3"]);
        let v = b.triangle(["v1", "v2", "v3"]);
        let z = b.triangle(["z1", "z2", "z3"]);
        let named = |l: &str| match l {
            "x2" => x[1],
            "x3" => x[2],
            "z1" => z[0],
            _ => z[1],
        };
        let vv = match merge {
            Some(m) => named(m),
            None => b.vertex("v"),
        };
        b.edge(v[2], vv);
        b.edge(u[0], x[0]);
        b.edge(u[1], v[1]);
        b.edge(u[2], z[2]);
        let mut t = Self::from_graph(GadgetId::G2, b.build());
        t.staller_owned = vec!["u1".into()];
        t.required_free = strings(&["u2", "u3", "v1", "v2", "v3", "v", "z3"]);
        if let Some(m) = merge {
            t.aliases.push(("v".into(), m.into()));
        }
        Ok(t)
    }

    pub fn g3() -> Self {
        let mut b = Builder::default();
        let u = b.triangle(["u1", "u2", "u3"]);
        let z = b.diamond(["z1", "z2", "z3", "z4"]);
        b.edge(u[1], z[0]);
        let mut t = Self::from_graph(GadgetId::G3, b.build());
        t.staller_owned = vec!["u1".into()];
        t.required_free = strings(&["u3", "z1", "z2", "z3", "z4"]);
        t
    }

    /// `Y` is a full diamond with tips `y1`, `y3`.
    pub fn g4() -> Self {
        let mut b = Builder::default();
        let u = b.triangle(["u1", "u2", "u3"]);
        let y = b.diamond(["y1", "y2", "y3", "y4"]);
        let z = b.diamond(["z1", "z2", "z3", "z4"]);
        b.edge(u[1], y[0]);
        b.edge(u[2], z[0]);
        Self::from_graph(GadgetId::G4, b.build())
    }

    /// Triangle `v1 v2 v3` with pendant neighbours `v0`, `u`, `v`.
    pub fn h1() -> Self {
        let mut b = Builder::default();
        let t = b.triangle(["v1", "v2", "v3"]);
        for (i, l) in [(0, "v0"), (1, "u"), (2, "v")] {
            let x = b.vertex(l);
            b.edge(t[i], x);
        }
        Self::from_graph(GadgetId::H1, b.build())
    }

    /// Diamond `Z` whose tip `z1` meets a vertex `v`, itself adjacent to `y1`, `y2`.
    pub fn h2() -> Self {
        let mut b = Builder::default();
        let z = b.diamond(["z1", "z2", "z3", "z4"]);
        let v = b.vertex("v");
        let y1 = b.vertex("y1");
        let y2 = b.vertex("y2");
        b.edge(v, z[0]);
        b.edge(v, y1);
        b.edge(v, y2);
        Self::from_graph(GadgetId::H2, b.build())
    }

    pub fn diamond() -> Self {
        let mut b = Builder::default();
        b.diamond(["z1", "z2", "z3", "z4"]);
        Self::from_graph(GadgetId::Diamond, b.build())
    }

    /// Claws centred at `t2`, `t3`, `t4`, joined leaf to leaf along the chain.
    pub fn three_claws() -> Self {
        let mut b = Builder::default();
        let claws: Vec<[usize; 3]> = (2..=4)
            .map(|i| {
                let t = b.vertex(format!("t{i}"));
                let leaves = ["x", "y", "z"].map(|p| b.vertex(format!("{p}{i}")));
                for &l in &leaves {
                    b.edge(t, l);
                }
                leaves
            })
            .collect();
        for w in claws.windows(2) {
            for j in 0..3 {
                b.edge(w[0][j], w[1][j]);
            }
        }
        Self::from_graph(GadgetId::ThreeClaws, b.build())
    }

    pub fn tau() -> Self {
        Self::from_graph(GadgetId::Tau, super::tau::tau_graph())
    }

    pub fn eta() -> Self {
        Self::from_graph(GadgetId::Eta, eta())
    }

    pub fn omega(chain_len: usize) -> Result<Self, GraphError> {
        Ok(Self::from_graph(GadgetId::Omega, omega(chain_len)?))
    }
}

fn strings(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

/// A template located in a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetEmbedding {
    pub id: GadgetId,
    /// Template label (aliases included) to host vertex.
    pub map: BTreeMap<String, usize>,
    /// Host image of the template.
    pub vertices: VertexSet,
    /// Image vertices that were free when the embedding was found.
    pub free_snapshot: VertexSet,
}

impl GadgetEmbedding {
    /// The template placed on itself, for standalone play.
    pub fn identity(t: &GadgetTemplate) -> Self {
        let vertices = VertexSet::full(t.graph.n());
        GadgetEmbedding { id: t.id, map: t.labels(), vertices, free_snapshot: vertices }
    }

    pub fn host(&self, label: &str) -> Option<usize> {
        self.map.get(label).copied()
    }
}

/// All embeddings of `t` into `host` using only vertices in `allowed`, up to `limit`.
/// Results come in lexicographic order of the host images along the search order.
pub fn find_embeddings(t: &GadgetTemplate, host: &Graph, allowed: VertexSet, limit: usize) -> Vec<GadgetEmbedding> {
    let tg = &t.graph;
    let order = search_order(tg);
    let mut phi = vec![usize::MAX; tg.n()];
    let mut used = VertexSet::EMPTY;
    let mut out = Vec::new();
    extend(t, host, allowed, &order, 0, &mut phi, &mut used, limit, &mut out);
    out
}

fn search_order(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend(
    t: &GadgetTemplate,
    host: &Graph,
    allowed: VertexSet,
    order: &[usize],
    k: usize,
    phi: &mut [usize],
    used: &mut VertexSet,
    limit: usize,
    out: &mut Vec<GadgetEmbedding>,
) {
    if out.len() >= limit {
        return;
    }
    let tg = &t.graph;
    if k == order.len() {
        let labels = t.labels();
        let map = labels.into_iter().map(|(l, tv)| (l, phi[tv])).collect();
        let vertices = VertexSet::from_iter(phi.iter().copied());
        out.push(GadgetEmbedding { id: t.id, map, vertices, free_snapshot: vertices.intersection(allowed) });
        return;
    }
    let tv = order[k];
    let anchor = tg.neighbors(tv).iter().copied().find(|&s| phi[s] != usize::MAX);
    let candidates: Vec<usize> = match anchor {
        Some(s) => {
            let mut c = host.neighbors(phi[s]).to_vec();
            c.sort_unstable();
            c
        }
        None => (0..host.n()).collect(),
    };
    let interior = t.interior.contains(tv);
    for hv in candidates {
        if used.contains(hv) || !allowed.contains(hv) {
            continue;
        }
        let hd = host.degree(hv);
        if hd < tg.degree(tv) || (interior && hd != tg.degree(tv)) {
            continue;
        }
        let consistent = order[..k].iter().all(|&s| {
            let t_adj = tg.has_edge(s, tv);
            let h_adj = host.has_edge(phi[s], hv);
            if t_adj {
                h_adj
            } else {
                !(h_adj && (interior || t.interior.contains(s)))
            }
        });
        if !consistent {
            continue;
        }
        phi[tv] = hv;
        used.insert(hv);
        extend(t, host, allowed, order, k + 1, phi, used, limit, out);
        used.remove(hv);
        phi[tv] = usize::MAX;
        if out.len() >= limit {
            return;
        }
    }
}

/// Gadgets whose free presence guarantees Staller a win, in search order.
pub fn remark_templates() -> Vec<GadgetTemplate> {
    vec![GadgetTemplate::g1(), GadgetTemplate::g4(), GadgetTemplate::three_claws(), GadgetTemplate::tau()]
}

/// The first of G1, G4, three consecutive claws or τ lying entirely on free vertices.
pub fn find_gadget(g: &Graph, p: &Position) -> Option<GadgetEmbedding> {
    find_gadget_among(&remark_templates(), g, p)
}

pub fn find_gadget_among(templates: &[GadgetTemplate], g: &Graph, p: &Position) -> Option<GadgetEmbedding> {
    let free = p.free();
    templates.iter().find_map(|t| find_embeddings(t, g, free, 1).into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;
    use crate::graph::{cycle, generalized_petersen, necklace, NecklaceKind};

    #[test]
    fn interiors_have_template_degree_three() {
        let g1 = GadgetTemplate::g1();
        let names: Vec<String> = g1.interior.iter().map(|v| g1.graph.display_name(v)).collect();
        assert_eq!(names, ["u1", "u2", "u3", "v1", "v2", "v3"]);
        let g4 = GadgetTemplate::g4();
        let mut names: Vec<String> = g4.interior.iter().map(|v| g4.graph.display_name(v)).collect();
        names.sort();
        assert_eq!(names, ["u2", "u3", "y1", "y2", "y4", "z1", "z2", "z4"]);
    }

    #[test]
    fn template_embeds_into_itself() {
        for t in [GadgetTemplate::g1(), GadgetTemplate::g3(), GadgetTemplate::g4(), GadgetTemplate::three_claws()] {
            let all = VertexSet::full(t.graph.n());
            let e = find_embeddings(&t, &t.graph, all, 1);
            assert_eq!(e.len(), 1, "{}", t.id);
            assert_eq!(e[0].vertices, all);
        }
    }

    #[test]
    fn g2_merged_variant_aliases_v() {
        let t = GadgetTemplate::g2(Some("x2")).unwrap();
        assert_eq!(t.graph.n(), 12);
        assert_eq!(t.labels()["v"], t.graph.v("x2"));
        assert!(GadgetTemplate::g2(Some("u3")).is_err());
    }

    #[test]
    fn cycle_has_no_gadget() {
        let g = cycle(4);
        assert!(find_gadget(&g, &Game::new(g.clone()).start(Player::Dominator)).is_none());
    }

    #[test]
    fn claw_necklace_gets_three_claws_after_any_first_move() {
        let g = necklace(NecklaceKind::Claw, 4).unwrap();
        let game = Game::new(g.clone());
        for d1 in 0..g.n() {
            let p = game.apply_move(&game.start(Player::Dominator), d1).unwrap();
            let e = find_gadget(&g, &p).expect("gadget");
            assert_eq!(e.id, GadgetId::ThreeClaws);
            assert!(!e.vertices.contains(d1));
        }
    }

    #[test]
    fn interior_neighbourhoods_are_reproduced() {
        let g = generalized_petersen(10, 2).unwrap();
        let t = GadgetTemplate::three_claws();
        for e in find_embeddings(&t, &g, VertexSet::full(g.n()), 50) {
            for tv in t.interior.iter() {
                let hv = e.map[&t.graph.display_name(tv)];
                let image = VertexSet::from_iter(t.graph.neighbors(tv).iter().map(|&s| e.map[&t.graph.display_name(s)]));
                assert_eq!(g.neighbor_set(hv), image);
            }
        }
    }
}
