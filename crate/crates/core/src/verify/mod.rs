//! Theorem-level verification campaigns and strategy-versus-adversary validation.

mod campaign;
mod validate;

use serde::{Deserialize, Serialize};

pub use campaign::{
    cases_for, default_suite, render_text, run_campaign, run_case, verify_theorem, CampaignSummary, CaseReport, Check,
    Instance, Method, StrategyKind, TheoremCase, TheoremId,
};
pub use validate::{validate_strategy, Adversary, ValidationReport, EXHAUSTIVE_POSITION_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Budget ran out; never counts as a pass.
    Inconclusive,
}

impl Verdict {
    /// Combines verdicts: any failure fails, otherwise any inconclusive is inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}
