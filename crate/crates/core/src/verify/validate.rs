use std::collections::HashMap;
use std::time::Instant;

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Verdict;
use crate::game::{Game, GameStatus, Player, Position};
use crate::solver::Solver;
use crate::strategies::Strategy;

/// How the opponent of a scripted strategy chooses its moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Adversary {
    /// Every legal move at every turn, memoized on ownership and strategy context.
    Exhaustive,
    /// The solver's best response at every turn.
    SolverBest,
    /// `count` uniformly random lines from a fixed seed.
    Random { seed: u64, count: u32 },
}

/// Result of playing one strategy against one adversary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub strategy: String,
    pub role: Player,
    pub adversary: Adversary,
    pub verdict: Verdict,
    /// Distinct positions (exhaustive) or lines (otherwise) examined.
    pub explored: u64,
    /// Decisions that left the strategy's own case table.
    pub fallbacks: u64,
    /// A losing line from the start position, if one was found.
    pub counterexample: Option<Vec<usize>>,
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

/// Cap on memoized positions before exhaustive validation gives up.
pub const EXHAUSTIVE_POSITION_LIMIT: u64 = 20_000_000;

struct Walker<'a> {
    strategy: &'a dyn Strategy,
    game: &'a Game,
    role: Player,
    memo: HashMap<(u64, u64, Player, u64), bool>,
    fallbacks: u64,
    error: Option<String>,
    exhausted: bool,
}

impl Walker<'_> {
    /// Whether the strategy wins from `p`; on a loss `line` holds the losing continuation.
    fn wins(&mut self, p: &Position, line: &mut Vec<usize>) -> bool {
        match self.game.status(p) {
            GameStatus::Ongoing => {}
            s => return s.winner() == Some(self.role),
        }
        if self.memo.len() as u64 >= EXHAUSTIVE_POSITION_LIMIT {
            self.exhausted = true;
            return true;
        }
        let key = (p.dominator.0, p.staller.0, p.to_move, self.strategy.context_key(p));
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let won = if p.to_move == self.role {
            match self.strategy.decide(p) {
                Ok(d) => {
                    if d.fallback {
                        self.fallbacks += 1;
                    }
                    match p.play(d.vertex) {
                        Ok(next) => {
                            line.push(d.vertex);
                            let w = self.wins(&next, line);
                            if w {
                                line.pop();
                            }
                            w
                        }
                        Err(e) => {
                            self.error = Some(format!("illegal move {}: {e}", d.vertex));
                            false
                        }
                    }
                }
                Err(e) => {
                    self.error = Some(e.to_string());
                    false
                }
            }
        } else {
            let mut all = true;
            for v in self.game.legal_moves(p).iter() {
                line.push(v);
                if !self.wins(&p.play(v).expect("legal move"), line) {
                    all = false;
                    break;
                }
                line.pop();
            }
            all
        };
        self.memo.insert(key, won);
        won
    }
}

fn play_line(
    strategy: &dyn Strategy,
    game: &Game,
    start: &Position,
    mut adversary: impl FnMut(&Position) -> Result<usize, String>,
    fallbacks: &mut u64,
) -> Result<(bool, Vec<usize>), String> {
    let role = strategy.role();
    let mut p = start.clone();
    let mut line = Vec::new();
    loop {
        match game.status(&p) {
            GameStatus::Ongoing => {}
            s => return Ok((s.winner() == Some(role), line)),
        }
        let v = if p.to_move == role {
            let d = strategy.decide(&p).map_err(|e| e.to_string())?;
            if d.fallback {
                *fallbacks += 1;
            }
            d.vertex
        } else {
            adversary(&p)?
        };
        p = p.play(v).map_err(|e| format!("illegal move {v}: {e}"))?;
        line.push(v);
    }
}

/// Plays `strategy` from `start` against `adversary` and reports whether its role won
/// every explored line.
pub fn validate_strategy(
    strategy: &dyn Strategy,
    game: &Game,
    start: &Position,
    adversary: Adversary,
    solver: &Solver,
) -> ValidationReport {
    let began = Instant::now();
    let role = strategy.role();
    let mut report = ValidationReport {
        strategy: strategy.name(),
        role,
        adversary,
        verdict: Verdict::Pass,
        explored: 0,
        fallbacks: 0,
        counterexample: None,
        detail: None,
        elapsed_ms: 0,
    };
    match adversary {
        Adversary::Exhaustive => {
            let mut w = Walker { strategy, game, role, memo: HashMap::new(), fallbacks: 0, error: None, exhausted: false };
            let mut line = Vec::new();
            let won = w.wins(start, &mut line);
            report.explored = w.memo.len() as u64;
            report.fallbacks = w.fallbacks;
            report.detail = w.error;
            if w.exhausted {
                report.verdict = Verdict::Inconclusive;
                report.detail = Some(format!("more than {EXHAUSTIVE_POSITION_LIMIT} positions"));
            } else if !won {
                report.verdict = Verdict::Fail;
                report.counterexample = Some(line);
            }
        }
        Adversary::SolverBest => {
            let r = play_line(strategy, game, start, |p| solver.best_response(game, p).map_err(|e| e.to_string()), &mut report.fallbacks);
            report.explored = 1;
            record(&mut report, r);
        }
        Adversary::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let r = play_line(
                    strategy,
                    game,
                    start,
                    |p| game.legal_moves(p).iter().choose(&mut rng).ok_or_else(|| "no legal move".to_string()),
                    &mut report.fallbacks,
                );
                report.explored += 1;
                record(&mut report, r);
                if report.verdict != Verdict::Pass {
                    break;
                }
            }
        }
    }
    report.elapsed_ms = began.elapsed().as_millis() as u64;
    report
}

fn record(report: &mut ValidationReport, r: Result<(bool, Vec<usize>), String>) {
    match r {
        Ok((true, _)) => {}
        Ok((false, line)) => {
            report.verdict = Verdict::Fail;
            report.counterexample = Some(line);
        }
        Err(e) if e.contains("budget") => {
            report.verdict = Verdict::Inconclusive;
            report.detail = Some(e);
        }
        Err(e) => {
            report.verdict = Verdict::Fail;
            report.detail = Some(e);
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graph::cycle;
    use crate::solver::SolverConfig;
    use crate::strategies::{Decision, SolverStrategy, StrategyError};

    /// Always claims the lowest free vertex.
    struct Greedy(Player);

    impl Strategy for Greedy {
        fn name(&self) -> String {
            "greedy".into()
        }
        fn role(&self) -> Player {
            self.0
        }
        fn decide(&self, pos: &Position) -> Result<Decision, StrategyError> {
            pos.free().first().map(Decision::planned).ok_or(StrategyError::NoMove)
        }
        fn context_key(&self, _pos: &Position) -> u64 {
            0
        }
    }

    fn c4() -> Arc<Game> {
        Arc::new(Game::new(cycle(4)))
    }

    #[test]
    fn greedy_dominator_loses_c4_with_a_replayable_line() {
        let game = c4();
        let solver = Solver::new(SolverConfig::default());
        let start = game.start(Player::Staller);
        let r = validate_strategy(&Greedy(Player::Dominator), &game, &start, Adversary::Exhaustive, &solver);
        assert_eq!(r.verdict, Verdict::Fail);
        let line = r.counterexample.expect("losing line");
        let end = game.apply_line(&start, &line).unwrap();
        assert_eq!(game.status(&end).winner(), Some(Player::Staller));
    }

    #[test]
    fn solver_dominator_passes_every_adversary() {
        let game = c4();
        let solver = Arc::new(Solver::new(SolverConfig::default()));
        let s = SolverStrategy::new(game.clone(), solver.clone(), Player::Dominator);
        for adv in [Adversary::Exhaustive, Adversary::SolverBest, Adversary::Random { seed: 1, count: 10 }] {
            let r = validate_strategy(&s, &game, &game.start(Player::Staller), adv, &solver);
            assert_eq!(r.verdict, Verdict::Pass, "{adv:?}");
            assert_eq!(r.fallbacks, 0);
        }
    }

    #[test]
    fn random_lines_are_seeded() {
        let game = c4();
        let solver = Solver::new(SolverConfig::default());
        let start = game.start(Player::Staller);
        let adv = Adversary::Random { seed: 3, count: 5 };
        let a = validate_strategy(&Greedy(Player::Dominator), &game, &start, adv, &solver);
        let b = validate_strategy(&Greedy(Player::Dominator), &game, &start, adv, &solver);
        assert_eq!(a.counterexample, b.counterexample);
        assert_eq!(a.verdict, b.verdict);
    }
}
