use std::sync::Arc;

use mbtd_core::game::{Game, GameError, GameStatus, Owner, Player, Position, Transcript};
use mbtd_core::graph::Graph;
use mbtd_core::solver::{find_double_trap_move, immediate_threats, SolveError, Solver, SolverConfig};
use mbtd_core::strategies::{engine_move, EngineMove, StrategyError};
use serde::{Deserialize, Serialize};
use uuid::Uuid;

use crate::error::ApiError;

/// One game between a human and the engine.
#[derive(Clone)]
pub struct Session {
    pub id: Uuid,
    pub game: Arc<Game>,
    pub position: Position,
    pub human: Player,
    pub first: Player,
    solver: Arc<Solver>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WinningSetView {
    /// Vertices whose open neighbourhood this set is.
    pub watched: Vec<usize>,
    pub members: Vec<usize>,
    /// Members still free; Staller needs all of them.
    pub needed: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThreatView {
    /// Free vertices that would complete a set for Staller right now.
    pub staller_wins_now: Vec<usize>,
    /// Vertices Dominator must take to stop an immediate completion.
    pub dominator_forced: Vec<usize>,
    pub double_trap: bool,
    /// A Staller move creating two completions at once, when Staller is to move.
    pub double_trap_move: Option<usize>,
}

/// Everything a client needs to render a session.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GameState {
    pub session_id: Uuid,
    pub n: usize,
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
    pub owners: Vec<Owner>,
    pub to_move: Player,
    pub status: GameStatus,
    pub human_role: Player,
    pub engine_role: Player,
    pub first: Player,
    pub legal_moves: Vec<usize>,
    pub live_sets: Vec<WinningSetView>,
    pub threats: ThreatView,
    /// The set Staller completed, once she has won.
    pub completed_set: Option<WinningSetView>,
    pub transcript: Transcript,
}

/// On-disk form of a session.
#[derive(Serialize, Deserialize)]
pub struct Snapshot {
    pub id: Uuid,
    pub human_role: Player,
    pub transcript: Transcript,
}

fn set_view(s: &mbtd_core::game::WinningSet, p: &Position) -> WinningSetView {
    WinningSetView {
        watched: s.watched.clone(),
        members: s.members.iter().collect(),
        needed: s.members.iter().filter(|&v| p.is_free(v)).collect(),
    }
}

impl Session {
    pub fn new(graph: Graph, human: Player, first: Player, cfg: SolverConfig) -> Self {
        let game = Arc::new(Game::new(graph));
        let position = game.start(first);
        Session { id: Uuid::new_v4(), game, position, human, first, solver: Arc::new(Solver::new(cfg)) }
    }

    pub fn from_snapshot(s: Snapshot, cfg: SolverConfig) -> Result<Self, GameError> {
        let (game, position) = s.transcript.replay()?;
        Ok(Session {
            id: s.id,
            game: Arc::new(game),
            position,
            human: s.human_role,
            first: s.transcript.first,
            solver: Arc::new(Solver::new(cfg)),
        })
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot { id: self.id, human_role: self.human, transcript: self.transcript() }
    }

    pub fn engine_role(&self) -> Player {
        self.human.other()
    }

    pub fn status(&self) -> GameStatus {
        self.game.status(&self.position)
    }

    pub fn transcript(&self) -> Transcript {
        Transcript::record(&self.game.graph, self.first, &self.position, self.status())
    }

    fn legal(&self) -> Vec<usize> {
        self.game.legal_moves(&self.position).iter().collect()
    }

    fn ensure_turn(&self, role: Player) -> Result<(), ApiError> {
        if self.status() != GameStatus::Ongoing {
            return Err(ApiError::Conflict("the game is over".into()));
        }
        if self.position.to_move != role {
            return Err(ApiError::Conflict(format!("it is {}'s turn", self.position.to_move)));
        }
        Ok(())
    }

    pub fn human_move(&mut self, vertex: usize) -> Result<(), ApiError> {
        self.ensure_turn(self.human)?;
        match self.game.apply_move(&self.position, vertex) {
            Ok(p) => {
                self.position = p;
                Ok(())
            }
            Err(e) => Err(ApiError::IllegalMove { vertex, reason: e.to_string(), legal_moves: self.legal() }),
        }
    }

    /// Computes the engine's move without applying it; may run the solver for a while.
    pub fn engine_choice(&self) -> Result<EngineMove, ApiError> {
        self.ensure_turn(self.engine_role())?;
        engine_move(&self.game, &self.position, self.engine_role(), &self.solver).map_err(|e| match e {
            StrategyError::Solver(SolveError::Exhausted { stats }) => {
                ApiError::Budget(format!("solver budget exhausted after {} nodes", stats.nodes))
            }
            other => ApiError::Internal(other.to_string()),
        })
    }

    pub fn apply_engine(&mut self, m: &EngineMove) -> Result<(), ApiError> {
        self.ensure_turn(self.engine_role())?;
        self.position = self.game.apply_move(&self.position, m.vertex).map_err(|e| ApiError::Internal(e.to_string()))?;
        Ok(())
    }

    pub fn engine_step(&mut self) -> Result<EngineMove, ApiError> {
        let m = self.engine_choice()?;
        self.apply_engine(&m)?;
        Ok(m)
    }

    pub fn view(&self) -> GameState {
        let g = &self.game.graph;
        let p = &self.position;
        let status = self.status();
        let threats = if status == GameStatus::Ongoing {
            let t = immediate_threats(&self.game, p);
            ThreatView {
                staller_wins_now: t.staller_wins_now.iter().collect(),
                dominator_forced: t.dominator_forced.iter().collect(),
                double_trap: t.is_double_trap(),
                double_trap_move: find_double_trap_move(&self.game, p),
            }
        } else {
            ThreatView { staller_wins_now: vec![], dominator_forced: vec![], double_trap: false, double_trap_move: None }
        };
        let completed_set = (status == GameStatus::StallerWon)
            .then(|| self.game.sets.sets().iter().find(|s| s.members.is_subset(p.staller)).map(|s| set_view(s, p)))
            .flatten();
        GameState {
            session_id: self.id,
            n: g.n(),
            labels: (0..g.n()).map(|v| g.display_name(v)).collect(),
            edges: g.edges(),
            owners: p.owners(),
            to_move: p.to_move,
            status,
            human_role: self.human,
            engine_role: self.engine_role(),
            first: self.first,
            legal_moves: self.legal(),
            live_sets: self.game.sets.live(p).map(|s| set_view(s, p)).collect(),
            threats,
            completed_set,
            transcript: self.transcript(),
        }
    }
}
