//! Acceptance run: one line per criterion, then a non-zero exit if any failed.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use common::{fixtures, fixtures_up_to, generated_cubic, Oracle};
use mbtd_core::game::{Game, Player};
use mbtd_core::graph::classify_structure;
use mbtd_core::solver::{Solver, SolverConfig};
use mbtd_core::strategies::tau::{extract_tau, tau_certificate, tau_graph, verify_certificate};
use mbtd_core::strategies::{find_gadget, GadgetId};
use mbtd_core::verify::{default_suite, run_campaign, CaseReport, Verdict};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BOTH: [Player; 2] = [Player::Dominator, Player::Staller];

struct Outcome {
    ok: bool,
    detail: String,
}

fn group_outcome(reports: &[&CaseReport], order: &HashMap<String, usize>, budget_ms: impl Fn(usize) -> u64) -> Outcome {
    let mut failures = Vec::new();
    for r in reports {
        let limit = budget_ms(order[&r.id]);
        if r.verdict != Verdict::Pass {
            failures.push(format!("{} ({}: {})", r.id, r.verdict, r.observed));
        } else if r.elapsed_ms > limit {
            failures.push(format!("{} took {} ms, budget {limit} ms", r.id, r.elapsed_ms));
        }
    }
    let slowest = reports.iter().map(|r| r.elapsed_ms).max().unwrap_or(0);
    Outcome {
        ok: failures.is_empty() && !reports.is_empty(),
        detail: if failures.is_empty() {
            format!("{} cases, slowest {slowest} ms", reports.len())
        } else {
            failures.join("; ")
        },
    }
}

/// Each property returns an error naming the first counterexample.
fn property_suite() -> Result<String, String> {
    let solver = Solver::new(SolverConfig::default());
    let mut done = Vec::new();

    for (name, g) in fixtures_up_to(9) {
        let game = Game::new(g.clone());
        for first in BOTH {
            let want = Oracle::new(&g).winner(first);
            let got = solver.winner(&game, &game.start(first)).map_err(|e| e.to_string())?;
            if got != want {
                return Err(format!("oracle disagrees on {name}, {first} first"));
            }
        }
    }
    done.push("oracle");

    let base = SolverConfig::default().sequential();
    let mut toggles = vec![base.clone().unpruned()];
    for i in 0..3 {
        let mut c = base.clone();
        match i {
            0 => c.hit_set_removal = false,
            1 => c.dominated_move = false,
            _ => c.threat_extension = false,
        }
        toggles.push(c);
    }
    for (name, g) in fixtures_up_to(12) {
        let game = Game::new(g);
        for first in BOTH {
            let want = solver.winner(&game, &game.start(first)).map_err(|e| e.to_string())?;
            for c in &toggles {
                if Solver::new(c.clone()).winner(&game, &game.start(first)).map_err(|e| e.to_string())? != want {
                    return Err(format!("pruning toggle changes {name}, {first} first"));
                }
            }
        }
    }
    done.push("pruning");

    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for (name, g) in fixtures_up_to(16) {
        let game = Game::new(g.clone());
        let want: Vec<Player> = BOTH.iter().map(|&f| solver.winner(&game, &game.start(f)).unwrap()).collect();
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut rng);
            let h = Game::new(g.relabel(&perm));
            let s = Solver::new(SolverConfig::default());
            for (i, &f) in BOTH.iter().enumerate() {
                if s.winner(&h, &h.start(f)).map_err(|e| e.to_string())? != want[i] {
                    return Err(format!("relabelling {name} by {perm:?} changes the winner"));
                }
            }
        }
    }
    done.push("relabelling");

    for (name, g) in fixtures_up_to(16) {
        let game = Game::new(g.clone());
        let starts = std::iter::once(game.start(Player::Staller))
            .chain((0..g.n()).map(|d| game.start(Player::Dominator).play(d).unwrap()));
        for p in starts {
            if find_gadget(&g, &p).is_some() && solver.winner(&game, &p).map_err(|e| e.to_string())? != Player::Staller {
                return Err(format!("gadget found on {name} after {:?} but Dominator wins", p.history));
            }
        }
    }
    done.push("gadget-implies-S");

    for (name, g) in generated_cubic().into_iter().filter(|(_, g)| g.n() >= 6) {
        let r = classify_structure(&g).map_err(|e| e.to_string())?;
        if r.t1 + r.t2 + r.t3 != g.n() || r.t1 % 2 != 0 || (r.t2 as i64 - r.t1 as i64).rem_euclid(3) != 0 {
            return Err(format!("structure relations fail on {name}: {r:?}"));
        }
    }
    done.push("structure-relations");

    for (name, g) in fixtures() {
        solver.classify_outcome(&Game::new(g)).map_err(|e| format!("{name}: {e}"))?;
    }
    done.push("no-contradiction");

    Ok(done.join(", "))
}

fn tau_reconstruction() -> Result<String, String> {
    let solver = Solver::new(SolverConfig::default().sequential());
    let (g, cert) = extract_tau(&solver).map_err(|e| e.to_string())?;
    verify_certificate(&g, &cert, &solver).map_err(|e| e.to_string())?;
    if g.edges() != tau_graph().edges() || cert != tau_certificate() {
        return Err("search result differs from the bundled fixture".into());
    }
    for n in 9..=12 {
        let host = mbtd_core::graph::generalized_petersen(n, 2).unwrap();
        let game = Game::new(host.clone());
        for d1 in 0..host.n() {
            let p = game.start(Player::Dominator).play(d1).unwrap();
            match find_gadget(&host, &p) {
                Some(e) if e.id == GadgetId::Tau && !e.vertices.contains(d1) => {}
                other => return Err(format!("gp({n},2) after {d1}: {:?}", other.map(|e| e.id))),
            }
        }
    }
    Ok(format!("{} vertices, certificate {} nodes, every opening avoided on gp(9..12,2)", g.n(), cert.nodes))
}

fn main() -> ExitCode {
    let began = Instant::now();
    let suite = default_suite();
    let order: HashMap<String, usize> = suite
        .iter()
        .map(|c| (c.id.clone(), c.instance.game().map(|(g, _)| g.n()).unwrap_or(usize::MAX)))
        .collect();
    let summary = run_campaign(&suite, None, &SolverConfig::default()).expect("no output path");
    let in_group = |g: &str| summary.cases.iter().filter(|c| c.group == g).collect::<Vec<_>>();

    let mut lines: Vec<(&str, Outcome)> = Vec::new();
    lines.push((
        "outcome table reproduction",
        group_outcome(&in_group("outcome-table"), &order, |n| if n <= 14 { 60_000 } else { 600_000 }),
    ));
    lines.push(("strategy validation suite", group_outcome(&in_group("strategy-validation"), &order, |_| 300_000)));
    lines.push(match property_suite() {
        Ok(d) => ("property suites", Outcome { ok: true, detail: d }),
        Err(d) => ("property suites", Outcome { ok: false, detail: d }),
    });
    let tau_cases = group_outcome(&in_group("tau"), &order, |_| 300_000);
    lines.push(match tau_reconstruction() {
        Ok(d) if tau_cases.ok => ("tau reconstruction", Outcome { ok: true, detail: d }),
        Ok(_) => ("tau reconstruction", tau_cases),
        Err(d) => ("tau reconstruction", Outcome { ok: false, detail: d }),
    });

    let mut all = true;
    for (name, o) in &lines {
        all &= o.ok;
        println!("{} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} in {:.1} s", if all { "PASS" } else { "FAIL" }, began.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
