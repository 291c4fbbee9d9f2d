//! The 15-vertex gadget τ for `GP(n, 2)`, `n >= 9`.
//!
//! The template is derived rather than transcribed: it is the first 15-vertex induced
//! subgraph of a nine-column window of `GP(n, 2)` on which Staller, moving first on an
//! empty board, wins the game restricted to the template's interior neighbourhoods. The
//! window has spokes `u_i v_i`, outer edges `u_i u_{i+1}` and inner edges `v_i v_{i+2}`
//! without wrap-around, so every shift of it embeds in `GP(n, 2)` for `n >= 9`. We also
//! require that both an outer and an inner slot are left out, so that some shift of the
//! template avoids any single vertex Dominator may have claimed.
//!
//! The result is frozen in `fixtures/tau.json` with its certificate in
//! `fixtures/tau.cert.json`; a test re-derives both.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Game, Player};
use crate::graph::{parse_graph, serialize_graph, Graph, GraphFormat};
use crate::solver::{SolveError, Solver};
use crate::VertexSet;

pub const WINDOW: usize = 9;
pub const TAU_ORDER: usize = 15;

const TAU_JSON: &str = include_str!("../../fixtures/tau.json");
const TAU_CERT_JSON: &str = include_str!("../../fixtures/tau.cert.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauCertificate {
    /// Window slots left out of the template.
    pub excluded: Vec<String>,
    /// Interior vertices whose neighbourhoods form the winning sets.
    pub interior: Vec<String>,
    pub winner: Player,
    /// A winning Staller line against the solver's best defence.
    pub principal_line: Vec<String>,
    pub nodes: u64,
}

#[derive(Debug, Error)]
pub enum TauError {
    #[error("no 15-vertex window subgraph is a first-player Staller win")]
    NotFound,
    #[error(transparent)]
    Solver(#[from] SolveError),
    #[error("certificate does not verify: {0}")]
    BadCertificate(String),
}

fn slot_label(slot: usize) -> String {
    if slot < WINDOW {
        format!("u{slot}")
    } else {
        format!("v{}", slot - WINDOW)
    }
}

/// The full nine-column window on 18 slots (`u0..u8` then `v0..v8`).
pub fn window() -> Graph {
    let mut g = Graph::empty(2 * WINDOW);
    for i in 0..WINDOW {
        g.add_edge(i, WINDOW + i).unwrap();
        if i + 1 < WINDOW {
            g.add_edge(i, i + 1).unwrap();
        }
        if i + 2 < WINDOW {
            g.add_edge(WINDOW + i, WINDOW + i + 2).unwrap();
        }
    }
    for s in 0..2 * WINDOW {
        g.set_label(s, slot_label(s));
    }
    g
}

fn interior_of(g: &Graph) -> VertexSet {
    VertexSet::from_iter((0..g.n()).filter(|&v| g.degree(v) == 3))
}

/// The template game on `g`: winning sets are the interior neighbourhoods.
pub fn tau_game(g: &Graph) -> Game {
    Game::with_targets(g.clone(), interior_of(g).iter())
}

fn certify(g: &Graph, excluded: Vec<String>, solver: &Solver) -> Result<TauCertificate, SolveError> {
    let game = tau_game(g);
    let r = solver.solve(&game, &game.start(Player::Staller))?;
    Ok(TauCertificate {
        excluded,
        interior: interior_of(g).iter().map(|v| g.display_name(v)).collect(),
        winner: r.winner,
        principal_line: r.principal_line.iter().map(|&v| g.display_name(v)).collect(),
        nodes: r.nodes,
    })
}

/// Searches the window's 15-vertex induced subgraphs in lexicographic order of the
/// excluded slot triple.
pub fn extract_tau(solver: &Solver) -> Result<(Graph, TauCertificate), TauError> {
    let w = window();
    let slots = 2 * WINDOW;
    for a in 0..slots {
        for b in a + 1..slots {
            for c in b + 1..slots {
                let out = [a, b, c];
                if !out.iter().any(|&s| s < WINDOW) || !out.iter().any(|&s| s >= WINDOW) {
                    continue;
                }
                let keep: Vec<usize> = (0..slots).filter(|s| !out.contains(s)).collect();
                let g = w.induced(&keep);
                let cert = certify(&g, out.iter().map(|&s| slot_label(s)).collect(), solver)?;
                if cert.winner == Player::Staller {
                    return Ok((g, cert));
                }
            }
        }
    }
    Err(TauError::NotFound)
}

/// The frozen template.
pub fn tau_graph() -> Graph {
    parse_graph(TAU_JSON, GraphFormat::JsonEdges).expect("bundled tau fixture parses")
}

pub fn tau_certificate() -> TauCertificate {
    serde_json::from_str(TAU_CERT_JSON).expect("bundled tau certificate parses")
}

/// Serialized forms of a template and certificate, as stored in the fixtures.
pub fn fixture_texts(g: &Graph, cert: &TauCertificate) -> (String, String) {
    let graph = serialize_graph(g, GraphFormat::JsonEdges).expect("template fits the board");
    let cert = serde_json::to_string_pretty(cert).expect("certificate serializes");
    (graph, cert)
}

/// Re-solves the frozen template and replays the stored line.
pub fn verify_certificate(g: &Graph, cert: &TauCertificate, solver: &Solver) -> Result<(), TauError> {
    let bad = |m: String| Err(TauError::BadCertificate(m));
    if g.n() != TAU_ORDER {
        return bad(format!("template has {} vertices", g.n()));
    }
    let fresh = certify(g, cert.excluded.clone(), solver)?;
    if fresh.winner != Player::Staller || cert.winner != Player::Staller {
        return bad("Staller does not win moving first".into());
    }
    if fresh.interior != cert.interior {
        return bad("interior differs".into());
    }
    let game = tau_game(g);
    let mut p = game.start(Player::Staller);
    for l in &cert.principal_line {
        let v = g.vertex_by_label(l).ok_or_else(|| TauError::BadCertificate(format!("unknown vertex {l}")))?;
        p = game.apply_move(&p, v).map_err(|e| TauError::BadCertificate(e.to_string()))?;
    }
    if game.status(&p).winner() != Some(Player::Staller) {
        return bad("stored line does not end in a Staller win".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_template_has_fifteen_vertices() {
        let g = tau_graph();
        assert_eq!(g.n(), TAU_ORDER);
        assert_eq!(tau_certificate().excluded.len(), 3);
    }

    #[test]
    fn frozen_certificate_verifies() {
        verify_certificate(&tau_graph(), &tau_certificate(), &Solver::default()).unwrap();
    }

    #[test]
    fn search_reproduces_the_fixture() {
        let (g, cert) = extract_tau(&Solver::default()).unwrap();
        let (graph_text, _) = fixture_texts(&g, &cert);
        assert_eq!(graph_text.trim(), TAU_JSON.trim());
        assert_eq!(cert.excluded, tau_certificate().excluded);
        assert_eq!(cert.interior, tau_certificate().interior);
    }
}
