//! Constructive strategies: pairings, partitions, scripted gadget play and the
//! family-specific Dominator strategies.

mod adapter;
mod circulant;
pub mod engine;
pub mod gadgets;
mod staller;
mod pairing;
mod partition;
mod prism;
mod region;
mod script;
pub mod tau;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::game::{Game, GameStatus, Player, Position};
use crate::solver::{SolveError, Solver};

pub use adapter::FirstMoveAdapter;
pub use circulant::BipartiteCirculantStrategy;
pub use engine::{certified_strategy, engine_move, EngineMove};
pub use gadgets::{find_embeddings, find_gadget, find_gadget_among, GadgetEmbedding, GadgetId, GadgetTemplate};
pub use staller::{
    eta_staller, g1_script, g2_script, g3_script, g4_script, omega_staller, three_claws_script, Dispatch,
    GadgetStaller, Opening, RemarkStaller,
};
pub use pairing::{find_pairing_plan, gp1_pairing_plan, verify_pairing_plan, PairingPlan, PairingStrategy};
pub use partition::PartitionStrategy;
pub use prism::PrismStrategy;
pub use region::{eta_dominator, omega_dominator, Region, RegionPairing, Trigger};
pub use script::{ScriptNode, ScriptStrategy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("it is not {0}'s turn")]
    NotMyTurn(Player),
    #[error("the game is already over")]
    GameOver,
    #[error("no free vertex left")]
    NoMove,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("strategy does not apply to this graph: {0}")]
    OffFamily(String),
    #[error(transparent)]
    Solver(#[from] SolveError),
}

/// A chosen move; `fallback` marks moves taken outside the strategy's own case table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub vertex: usize,
    pub fallback: bool,
}

impl Decision {
    pub fn planned(vertex: usize) -> Self {
        Decision { vertex, fallback: false }
    }

    pub fn fallback(vertex: usize) -> Self {
        Decision { vertex, fallback: true }
    }
}

pub trait Strategy: Send + Sync {
    fn name(&self) -> String;

    fn role(&self) -> Player;

    /// The move for `pos`, which must have this strategy's role to move.
    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError>;

    fn next_move(&self, pos: &Position) -> Result<usize, StrategyError> {
        self.decide(pos).map(|d| d.vertex)
    }

    /// Everything beyond ownership that the strategy's future choices depend on.
    /// Validation memoizes on ownership plus this key, so it must be a sufficient summary.
    fn context_key(&self, pos: &Position) -> u64 {
        hash_of(&pos.history)
    }
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn name(&self) -> String {
        (**self).name()
    }

    fn role(&self) -> Player {
        (**self).role()
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        (**self).decide(pos)
    }

    fn context_key(&self, pos: &Position) -> u64 {
        (**self).context_key(pos)
    }
}

pub(crate) fn hash_of<T: Hash + ?Sized>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

/// Common precondition checks; returns the game status error if play is over.
pub(crate) fn check_turn(game: &Game, pos: &Position, role: Player) -> Result<(), StrategyError> {
    if game.status(pos) != GameStatus::Ongoing {
        return Err(StrategyError::GameOver);
    }
    if pos.to_move != role {
        return Err(StrategyError::NotMyTurn(role));
    }
    Ok(())
}

pub(crate) fn lowest_free(pos: &Position) -> Result<usize, StrategyError> {
    pos.free().first().ok_or(StrategyError::NoMove)
}

/// The last move made by `p`, if any.
pub(crate) fn last_move_of(pos: &Position, p: Player) -> Option<usize> {
    pos.history.iter().rev().find(|m| m.player == p).map(|m| m.vertex)
}

/// Plays the solver's best response; the baseline engine and script fallback.
pub struct SolverStrategy {
    game: Arc<Game>,
    solver: Arc<Solver>,
    role: Player,
}

impl SolverStrategy {
    pub fn new(game: Arc<Game>, solver: Arc<Solver>, role: Player) -> Self {
        SolverStrategy { game, solver, role }
    }
}

impl Strategy for SolverStrategy {
    fn name(&self) -> String {
        format!("solver best response ({})", self.role)
    }

    fn role(&self) -> Player {
        self.role
    }

    fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
        check_turn(&self.game, pos, self.role)?;
        Ok(Decision::planned(self.solver.best_response(&self.game, pos)?))
    }

    fn context_key(&self, _pos: &Position) -> u64 {
        0
    }
}
