use mbtd_core::game::{OutcomeClass, Player};
use mbtd_core::solver::{Solver, SolverConfig};
use mbtd_core::verify::{cases_for, default_suite, run_campaign, Check, Instance, TheoremCase, TheoremId, Verdict};

fn cfg() -> SolverConfig {
    SolverConfig::default().sequential()
}

fn class_case(family: &str, params: &[usize], class: OutcomeClass) -> TheoremCase {
    TheoremCase {
        id: format!("probe/{family}"),
        theorem: TheoremId::Prelim,
        group: "outcome-table".into(),
        instance: Instance::new(family, params),
        check: Check::Class { class },
    }
}

#[test]
fn empty_suite_passes() {
    let s = run_campaign(&[], None, &cfg()).unwrap();
    assert_eq!(s.verdict, Verdict::Pass);
    assert_eq!((s.passed, s.failed, s.inconclusive), (0, 0, 0));
}

#[test]
fn wrong_expectations_fail_the_campaign() {
    let mut never = class_case("cycle", &[4], OutcomeClass::D);
    never.check = Check::Never;
    never.id = "probe/never".into();
    let suite = vec![class_case("cycle", &[4], OutcomeClass::D), class_case("complete", &[1], OutcomeClass::D), never];
    let s = run_campaign(&suite, None, &cfg()).unwrap();
    assert_eq!(s.verdict, Verdict::Fail);
    assert_eq!((s.passed, s.failed), (1, 2));
}

#[test]
fn unknown_instances_fail_instead_of_panicking() {
    let s = run_campaign(&[class_case("no-such-family", &[], OutcomeClass::D)], None, &cfg()).unwrap();
    assert_eq!(s.verdict, Verdict::Fail);
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let s = run_campaign(&[class_case("gp", &[8, 2], OutcomeClass::S)], None, &cfg().with_node_budget(10)).unwrap();
    assert_eq!(s.verdict, Verdict::Inconclusive);
}

/// Drops fields that measure wall-clock time.
fn untimed(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(untimed);
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(untimed),
        _ => {}
    }
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let suite: Vec<_> = [TheoremId::Prelim, TheoremId::L1, TheoremId::T5].into_iter().flat_map(|t| cases_for(t, &[])).collect();
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("run{i}.json"));
        run_campaign(&suite, Some(&path), &cfg()).unwrap();
        assert!(path.with_extension("txt").exists());
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        untimed(&mut v);
        texts.push(serde_json::to_string(&v).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn exhaustive_validation_agrees_with_the_solver() {
    let solver = Solver::new(cfg());
    let mut compared = 0;
    for case in default_suite() {
        let Check::Strategy { strategy, first, ref opening, adversary } = case.check else { continue };
        if adversary != mbtd_core::verify::Adversary::Exhaustive {
            continue;
        }
        let (game, template) = case.instance.game().unwrap();
        if game.n() > 16 {
            continue;
        }
        let mut start = match &template {
            Some(t) => t.setup(&game, first),
            None => game.start(first),
        };
        for l in opening {
            start = game.apply_move(&start, game.graph.v(l)).unwrap();
        }
        let role: Player = strategy.role();
        assert_eq!(solver.winner(&game, &start).unwrap(), role, "{}", case.id);
        compared += 1;
    }
    assert!(compared > 20, "only {compared} cases compared");
}
