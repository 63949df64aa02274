//! Acceptance gate: every criterion at full scale under the default seed,
//! one PASS/FAIL line each.

use gaussmix::suite::{reproduce_all, CriterionReport, SuiteOptions};
use gaussmix::DEFAULT_SEED;

fn quick_json(threads: usize) -> String {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    let report = pool
        .install(|| reproduce_all(SuiteOptions { seed: DEFAULT_SEED, quick: true }))
        .unwrap();
    serde_json::to_string(&report).unwrap()
}

fn determinism_criterion() -> CriterionReport {
    use gaussmix::suite::Check;
    let first = quick_json(1);
    let second = quick_json(1);
    let wide = quick_json(3);
    CriterionReport::new(
        9,
        "determinism of the reproduction suite (property suites run as separate targets)",
        vec![
            Check::holds("identical seed and workers give identical bytes", first == second),
            Check::holds("one and three workers give identical bytes", first == wide),
        ],
    )
}

#[test]
fn acceptance() {
    let report = reproduce_all(SuiteOptions { seed: DEFAULT_SEED, quick: false }).unwrap();
    let mut criteria = report.criteria;
    criteria.push(determinism_criterion());
    for c in &criteria {
        println!("{}", c.summary_line());
    }
    let failed: Vec<u8> = criteria.iter().filter(|c| !c.pass).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
