//! Turn-based terminal play against the engine.

use std::io::{self, BufRead, Write};
use std::sync::Arc;

use mbtd_core::game::{Game, GameStatus, Owner, Player, Position};
use mbtd_core::graph::Graph;
use mbtd_core::solver::{find_double_trap_move, immediate_threats, SolveError, Solver, SolverConfig};
use mbtd_core::strategies::{engine_move, StrategyError};

pub enum Ended {
    Finished,
    Quit,
    Budget(String),
}

fn names(g: &Graph, vs: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<String> = vs.into_iter().map(|v| g.display_name(v)).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(" ")
    }
}

fn board(g: &Graph, p: &Position, out: &mut impl Write) -> io::Result<()> {
    let of = |o: Owner| names(g, (0..g.n()).filter(|&v| p.owner(v) == o));
    writeln!(out, "dominator: {}", of(Owner::Dominator))?;
    writeln!(out, "staller:   {}", of(Owner::Staller))?;
    writeln!(out, "free:      {}", of(Owner::Free))
}

/// Parses a vertex given by label or by id.
fn parse_vertex(g: &Graph, text: &str) -> Option<usize> {
    g.vertex_by_label(text).or_else(|| text.parse().ok().filter(|&v| v < g.n()))
}

pub fn play(
    g: Graph,
    human: Player,
    first: Player,
    hints: bool,
    cfg: SolverConfig,
    input: &mut impl BufRead,
    out: &mut impl Write,
) -> io::Result<Ended> {
    let game = Arc::new(Game::new(g.clone()));
    let solver = Arc::new(Solver::new(cfg));
    let mut p = game.start(first);
    writeln!(out, "you play {human}; {first} moves first; enter a vertex, or `quit`")?;
    loop {
        let status = game.status(&p);
        if status != GameStatus::Ongoing {
            board(&g, &p, out)?;
            let winner = status.winner().expect("finished game has a winner");
            writeln!(out, "winner: {winner}{}", if winner == human { " (you)" } else { "" })?;
            return Ok(Ended::Finished);
        }
        if p.to_move != human {
            match engine_move(&game, &p, human.other(), &solver) {
                Ok(m) => {
                    writeln!(out, "engine plays {} ({})", g.display_name(m.vertex), m.source)?;
                    p = game.apply_move(&p, m.vertex).expect("engine moves are legal");
                }
                Err(StrategyError::Solver(e @ SolveError::Exhausted { .. })) => return Ok(Ended::Budget(e.to_string())),
                Err(e) => return Err(io::Error::other(e.to_string())),
            }
            continue;
        }
        board(&g, &p, out)?;
        if hints {
            let t = immediate_threats(&game, &p);
            writeln!(out, "hint: staller completes with {}", names(&g, t.staller_wins_now.iter()))?;
            if t.is_double_trap() {
                writeln!(out, "hint: double trap, dominator cannot block both")?;
            }
            if let Some(v) = find_double_trap_move(&game, &p) {
                writeln!(out, "hint: {} sets a double trap", g.display_name(v))?;
            }
        }
        write!(out, "your move> ")?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(Ended::Quit);
        }
        let text = line.trim();
        if text == "quit" {
            return Ok(Ended::Quit);
        }
        let legal = game.legal_moves(&p);
        match parse_vertex(&g, text) {
            Some(v) if legal.contains(v) => p = game.apply_move(&p, v).expect("checked legal"),
            _ => writeln!(out, "illegal move {text:?}; legal: {}", names(&g, legal.iter()))?,
        }
    }
}
