//! Exact solver: memoized alternating search over residual winning-set systems.

mod search;

use std::sync::atomic::Ordering;
use std::time::Duration;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::game::{Game, GameError, GameStatus, Outcome, Player, Position};
use crate::vset::VertexSet;
use search::{apply, canonical_key, double_trap_vertex, normalize, singles, staller_wins, Ctx, Key};

#[derive(Clone, Debug, Serialize)]
pub struct SolverConfig {
    /// Maximum number of memo entries; further results are not cached.
    pub memo_capacity: usize,
    pub node_budget: u64,
    #[serde(with = "duration_secs")]
    pub time_budget: Duration,
    /// Reduce states to deduplicated, superset-free residual systems.
    pub hit_set_removal: bool,
    pub dominated_move: bool,
    /// Forced blocks for Dominator and double-trap detection for Staller.
    pub threat_extension: bool,
    pub root_parallelism: bool,
}

mod duration_secs {
    pub fn serialize<S: serde::Serializer>(d: &std::time::Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            memo_capacity: 8_000_000,
            node_budget: 2_000_000_000,
            time_budget: Duration::from_secs(600),
            hit_set_removal: true,
            dominated_move: true,
            threat_extension: true,
            root_parallelism: true,
        }
    }
}

impl SolverConfig {
    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.root_parallelism = false;
        self
    }

    /// Every pruning toggle off.
    pub fn unpruned(mut self) -> Self {
        self.hit_set_removal = false;
        self.dominated_move = false;
        self.threat_extension = false;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub memo_hits: u64,
    pub depth: usize,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub winner: Player,
    pub best_move: Option<usize>,
    pub nodes: u64,
    pub principal_line: Vec<usize>,
    pub from_cache: bool,
    pub stats: SolveStats,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("solver budget exhausted after {} nodes", stats.nodes)]
    Exhausted { stats: SolveStats },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Vertices Staller could complete a set with now, and the blocks Dominator owes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Threats {
    pub staller_wins_now: VertexSet,
    pub dominator_forced: VertexSet,
}

impl Threats {
    /// Two or more blocks are owed at once, so Dominator cannot cover them.
    pub fn is_double_trap(&self) -> bool {
        self.dominator_forced.len() >= 2
    }
}

/// An exact solver with a transposition table that persists across calls.
pub struct Solver {
    cfg: SolverConfig,
    memo: DashMap<Key, bool>,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(SolverConfig::default())
    }
}

/// Root analysis of one position: who wins and with which move.
struct RootOutcome {
    winner: Player,
    best_move: Option<usize>,
    from_cache: bool,
}

impl Solver {
    pub fn new(cfg: SolverConfig) -> Self {
        Solver { cfg, memo: DashMap::new() }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear(&self) {
        self.memo.clear();
    }

    fn residual(&self, game: &Game, p: &Position) -> Vec<u64> {
        let mut sets: Vec<u64> = game.sets.residual(p).into_iter().map(|s| s.0).collect();
        if self.cfg.hit_set_removal {
            normalize(&mut sets);
        }
        sets
    }

    fn root(&self, ctx: &Ctx<'_>, game: &Game, p: &Position) -> Result<RootOutcome, SolveError> {
        if let Some(w) = game.status(p).winner() {
            return Ok(RootOutcome { winner: w, best_move: None, from_cache: false });
        }
        let staller = p.to_move == Player::Staller;
        let sets = self.residual(game, p);
        let free = p.free().0;
        let support = sets.iter().fold(0u64, |a, &s| a | s);
        let cands: Vec<usize> =
            VertexSet(if self.cfg.hit_set_removal { support & free } else { free }).to_vec();
        let key = canonical_key(&sets, staller, (!self.cfg.hit_set_removal).then_some(free));
        let from_cache = self.memo.contains_key(&key);
        // Completing a set ends the game at once; prefer that over slower wins.
        let completions = singles(&sets);
        if staller && completions != 0 {
            let v = completions.trailing_zeros() as usize;
            return Ok(RootOutcome { winner: Player::Staller, best_move: Some(v), from_cache });
        }

        let wins_for_mover = |v: usize| -> bool {
            let child = apply(&sets, v, staller, self.cfg.hit_set_removal);
            match staller_wins(ctx, &child, free & !(1u64 << v), !staller, 1) {
                Ok(w) => w == staller,
                Err(_) => false,
            }
        };
        let found = if self.cfg.root_parallelism {
            cands.par_iter().position_first(|&v| wins_for_mover(v))
        } else {
            cands.iter().position(|&v| wins_for_mover(v))
        };
        if ctx.aborted.load(Ordering::Relaxed) {
            return Err(SolveError::Exhausted { stats: stats(ctx) });
        }
        let (winner, best) = match found {
            Some(i) => (p.to_move, cands[i]),
            None => {
                let forced = singles(&sets);
                let fallback = if !staller && forced != 0 {
                    forced.trailing_zeros() as usize
                } else {
                    cands[0]
                };
                (p.to_move.other(), fallback)
            }
        };
        if self.memo.len() < self.cfg.memo_capacity {
            self.memo.insert(key, winner == Player::Staller);
        }
        Ok(RootOutcome { winner, best_move: Some(best), from_cache })
    }

    /// Exact winner of `p` under optimal play, with the lowest-id winning move
    /// (a Staller move completing a set takes precedence).
    ///
    /// When the side to move is lost, `best_move` is still a legal move: Dominator blocks
    /// the lowest pending threat if there is one, otherwise the lowest relevant vertex.
    pub fn solve(&self, game: &Game, p: &Position) -> Result<SolveResult, SolveError> {
        if p.n != game.n() {
            return Err(GameError::BoardMismatch { position: p.n, graph: game.n() }.into());
        }
        let ctx = Ctx::new(&self.cfg, &self.memo);
        let top = self.root(&ctx, game, p)?;
        let mut line = Vec::new();
        let mut cur = p.clone();
        let mut next = top.best_move;
        while let Some(v) = next {
            line.push(v);
            cur = cur.play(v)?;
            let r = self.root(&ctx, game, &cur)?;
            debug_assert_eq!(r.winner, top.winner);
            next = r.best_move;
        }
        let st = stats(&ctx);
        Ok(SolveResult {
            winner: top.winner,
            best_move: top.best_move,
            nodes: st.nodes,
            principal_line: line,
            from_cache: top.from_cache,
            stats: st,
        })
    }

    /// Winner only, without building the principal line.
    pub fn winner(&self, game: &Game, p: &Position) -> Result<Player, SolveError> {
        let ctx = Ctx::new(&self.cfg, &self.memo);
        Ok(self.root(&ctx, game, p)?.winner)
    }

    /// A move achieving the position's value for the side to move.
    pub fn best_response(&self, game: &Game, p: &Position) -> Result<usize, SolveError> {
        let ctx = Ctx::new(&self.cfg, &self.memo);
        self.root(&ctx, game, p)?.best_move.ok_or(SolveError::Game(GameError::GameOver))
    }

    pub fn classify_outcome(&self, game: &Game) -> Result<Outcome, ClassifyError> {
        let d = self.winner(game, &game.start(Player::Dominator))?;
        let s = self.winner(game, &game.start(Player::Staller))?;
        Ok(Outcome::from_winners(d, s)?)
    }

    /// Winner after each possible first move of `first`, in vertex order.
    pub fn first_move_analysis(&self, game: &Game, first: Player) -> Result<Vec<(usize, Player)>, SolveError> {
        let start = game.start(first);
        game.legal_moves(&start)
            .iter()
            .map(|v| Ok((v, self.winner(game, &start.play(v)?)?)))
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("outcome unknown: {0}")]
    Unknown(#[from] SolveError),
    #[error(transparent)]
    Contradiction(#[from] GameError),
}

fn stats(ctx: &Ctx<'_>) -> SolveStats {
    SolveStats {
        nodes: ctx.nodes.load(Ordering::Relaxed),
        memo_hits: ctx.hits.load(Ordering::Relaxed),
        depth: ctx.max_depth.load(Ordering::Relaxed),
        elapsed_ms: ctx.start.elapsed().as_millis() as u64,
    }
}

/// Pending single-vertex completions in `p`, for either side's point of view.
pub fn immediate_threats(game: &Game, p: &Position) -> Threats {
    let s = game
        .sets
        .residual(p)
        .into_iter()
        .filter(|s| s.len() == 1)
        .fold(VertexSet::EMPTY, |a, s| a.union(s));
    Threats { staller_wins_now: s, dominator_forced: s }
}

/// The lowest Staller move that leaves Dominator two distinct blocks to make.
pub fn find_double_trap_move(game: &Game, p: &Position) -> Option<usize> {
    if p.to_move != Player::Staller || game.status(p) != GameStatus::Ongoing {
        return None;
    }
    let sets: Vec<u64> = game.sets.residual(p).into_iter().map(|s| s.0).collect();
    if sets.iter().any(|s| s.count_ones() <= 1) {
        return None;
    }
    // Only vertices in two-element sets can create two threats in one move.
    let _ = double_trap_vertex(&sets)?;
    p.free().iter().find(|&v| {
        let after = apply(&sets, v, true, false);
        singles(&after).count_ones() >= 2 && !after.contains(&0)
    })
}

/// Convenience for a one-off outcome class with a fresh solver.
pub fn classify_outcome(game: &Game, cfg: SolverConfig) -> Result<Outcome, ClassifyError> {
    Solver::new(cfg).classify_outcome(game)
}

/// One-off solve with a fresh transposition table.
pub fn solve(game: &Game, p: &Position, cfg: SolverConfig) -> Result<SolveResult, SolveError> {
    Solver::new(cfg).solve(game, p)
}

pub fn best_response(game: &Game, p: &Position, cfg: SolverConfig) -> Result<usize, SolveError> {
    Solver::new(cfg).best_response(game, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, generalized_petersen, Graph};

    fn winner(g: Graph, first: Player) -> Player {
        let game = Game::new(g);
        Solver::default().solve(&game, &game.start(first)).unwrap().winner
    }

    #[test]
    fn c4_dominator_first() {
        assert_eq!(winner(cycle(4), Player::Dominator), Player::Dominator);
    }

    #[test]
    fn petersen_staller() {
        assert_eq!(winner(generalized_petersen(5, 2).unwrap(), Player::Dominator), Player::Staller);
    }

    #[test]
    fn prism_staller_first() {
        assert_eq!(winner(generalized_petersen(3, 1).unwrap(), Player::Staller), Player::Dominator);
    }

    #[test]
    fn principal_line_replays_to_declared_winner() {
        let game = Game::new(generalized_petersen(5, 2).unwrap());
        let p = game.start(Player::Dominator);
        let r = Solver::default().solve(&game, &p).unwrap();
        let end = game.apply_line(&p, &r.principal_line).unwrap();
        assert_eq!(game.status(&end).winner(), Some(r.winner));
    }

    #[test]
    fn one_move_completion_is_chosen() {
        let game = Game::new(cycle(4));
        let p = Position::setup(4, [], [1], Player::Staller).unwrap();
        // N(0) = N(2) = {1, 3}: claiming 3 isolates 0.
        assert_eq!(Solver::default().best_response(&game, &p).unwrap(), 3);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let game = Game::new(generalized_petersen(5, 2).unwrap());
        let s = Solver::new(SolverConfig::default().with_node_budget(3));
        assert!(matches!(s.solve(&game, &game.start(Player::Dominator)), Err(SolveError::Exhausted { .. })));
    }

    #[test]
    fn no_double_trap_from_empty_petersen() {
        let game = Game::new(generalized_petersen(5, 2).unwrap());
        assert_eq!(find_double_trap_move(&game, &game.start(Player::Staller)), None);
    }
}
