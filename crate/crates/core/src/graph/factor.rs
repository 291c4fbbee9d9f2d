//! Exact-cover search for diamond, triangle and claw factors.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::vset::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorKind {
    Diamond,
    Triangle,
    Claw,
}

impl FactorKind {
    pub fn part_size(self) -> usize {
        match self {
            FactorKind::Triangle => 3,
            FactorKind::Diamond | FactorKind::Claw => 4,
        }
    }
}

impl std::str::FromStr for FactorKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "diamond" => Ok(FactorKind::Diamond),
            "triangle" => Ok(FactorKind::Triangle),
            "claw" => Ok(FactorKind::Claw),
            _ => Err(format!("unknown factor kind {s:?}")),
        }
    }
}

/// A partition of the vertex set into parts each inducing the named subgraph.
/// For claws the first vertex of every part is the center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCertificate {
    pub kind: FactorKind,
    pub parts: Vec<Vec<usize>>,
}

impl FactorCertificate {
    /// Re-checks disjointness, coverage and the induced shape of every part.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut seen = VertexSet::EMPTY;
        for part in &self.parts {
            if part.len() != self.kind.part_size() {
                return false;
            }
            for &v in part {
                if v >= g.n() || seen.contains(v) {
                    return false;
                }
                seen.insert(v);
            }
            if !induces(g, self.kind, part) {
                return false;
            }
        }
        seen == VertexSet::full(g.n())
    }
}

fn induced_edges(g: &Graph, part: &[usize]) -> usize {
    let mut e = 0;
    for i in 0..part.len() {
        for j in i + 1..part.len() {
            if g.has_edge(part[i], part[j]) {
                e += 1;
            }
        }
    }
    e
}

fn induces(g: &Graph, kind: FactorKind, part: &[usize]) -> bool {
    match kind {
        FactorKind::Triangle => induced_edges(g, part) == 3,
        // Four vertices with five edges is exactly K4 minus an edge.
        FactorKind::Diamond => induced_edges(g, part) == 5,
        FactorKind::Claw => {
            induced_edges(g, part) == 3 && part[1..].iter().all(|&l| g.has_edge(part[0], l))
        }
    }
}

fn candidate_parts(g: &Graph, kind: FactorKind) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    match kind {
        FactorKind::Claw => {
            for c in 0..g.n() {
                let nb = g.neighbors(c);
                for i in 0..nb.len() {
                    for j in i + 1..nb.len() {
                        for k in j + 1..nb.len() {
                            let part = vec![c, nb[i], nb[j], nb[k]];
                            if induces(g, kind, &part) {
                                out.push(part);
                            }
                        }
                    }
                }
            }
        }
        FactorKind::Triangle => {
            out.extend(super::raw_triangles(g).into_iter().map(|t| t.to_vec()));
        }
        FactorKind::Diamond => {
            out.extend(super::diamonds(g).into_iter().map(|d| d.vertices().to_vec()));
        }
    }
    out
}

/// Exhaustive search for an H-factor. `None` is definitive.
pub fn find_factor(g: &Graph, kind: FactorKind) -> Option<FactorCertificate> {
    if g.n() == 0 || g.n() % kind.part_size() != 0 || g.n() > crate::vset::MAX_BOARD {
        return None;
    }
    let cands = candidate_parts(g, kind);
    let masks: Vec<VertexSet> = cands.iter().map(|p| p.iter().copied().collect()).collect();
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, m) in masks.iter().enumerate() {
        for v in m.iter() {
            by_vertex[v].push(i);
        }
    }
    let full = VertexSet::full(g.n());
    let mut chosen = Vec::new();

    fn search(
        covered: VertexSet,
        full: VertexSet,
        masks: &[VertexSet],
        by_vertex: &[Vec<usize>],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let Some(v) = full.difference(covered).first() else {
            return true;
        };
        for &c in &by_vertex[v] {
            if masks[c].intersects(covered) {
                continue;
            }
            chosen.push(c);
            if search(covered.union(masks[c]), full, masks, by_vertex, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    if search(VertexSet::EMPTY, full, &masks, &by_vertex, &mut chosen) {
        Some(FactorCertificate { kind, parts: chosen.into_iter().map(|c| cands[c].clone()).collect() })
    } else {
        None
    }
}
