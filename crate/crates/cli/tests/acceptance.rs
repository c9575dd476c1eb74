//! Acceptance criteria 1 through 8. Run with `--nocapture` to see one
//! pass/fail line per criterion.

use std::process::Command;

use detmor_core::determined::{epi_mono_dichotomy_report, DichotomyParams};
use detmor_core::linalg::Field;
use detmor_core::quiver::{Quiver, QuiverCategory};
use detmor_core::suites::{
    AlmostSplitSuite, AuslanderTableSuite, DualizingContrastSuite, InfraSuite, Instance,
    ProjTrivialSuite, RightEquivalenceSuite, SerreDimSuite, Suite, SuiteContext, SuiteOutcome,
};
use detmor_core::tube::TubeCategory;

fn tube(p: u64) -> Instance {
    Instance::Tube(TubeCategory::new(Field::prime(p)))
}

fn a2(p: u64) -> Instance {
    Instance::Quiver(QuiverCategory::new(Field::prime(p), Quiver::linear_a(2)))
}

fn run(suite: &dyn Suite, inst: Instance, bound: Option<usize>) -> SuiteOutcome {
    suite
        .run(&SuiteContext::new(inst).with_bound(bound))
        .unwrap()
}

fn verdict(n: u32, ok: bool, detail: String) {
    println!(
        "criterion {n}: {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
}

/// Prints the criterion line, then fails the test if any outcome failed.
fn settle(n: u32, outcomes: &[SuiteOutcome]) {
    let ok = outcomes.iter().all(|o| o.passed && !o.vacuous);
    let checks: u64 = outcomes.iter().map(|o| o.checks).sum();
    verdict(n, ok, format!("({checks} checks)"));
    if let Some(o) = outcomes.iter().find(|o| !o.passed || o.vacuous) {
        panic!("{}: {:?}", o.suite, o.lines);
    }
}

#[test]
fn criterion_1_serre_dimensions() {
    settle(
        1,
        &[
            run(&SerreDimSuite, tube(2), Some(5)),
            run(&SerreDimSuite, tube(3), Some(5)),
        ],
    );
}

#[test]
fn criterion_2_epi_mono_dichotomy() {
    let cat = TubeCategory::new(Field::prime(2));
    let objs = cat.enumerate_objects(3).unwrap();
    let r = epi_mono_dichotomy_report(&cat, &objs, DichotomyParams::default()).unwrap();
    let epis = r.right.epis_hold() && r.left.epis_hold();
    let long = r.right.long_witnesses_hold() && r.left.long_witnesses_hold();
    let short = r.right.short_witnesses_hold() && r.left.short_witnesses_hold();
    verdict(
        2,
        epis && long && short,
        format!(
            "epis {}/{} monos {}/{} determined; non-determinedness witnessed within maxpart(C)+maxpart(Y) \
             for all {} + {} pairs; within maxpart(C)+1 only {}/{} and {}/{} (witness-length clause fails, \
             e.g. J2 -> J3 against C = J1 needs T = J3)",
            r.right.epis_determined,
            r.right.epis,
            r.left.epis_determined,
            r.left.epis,
            r.right.witness_checks,
            r.left.witness_checks,
            r.right.witnesses_within_short_bound,
            r.right.witness_checks,
            r.left.witnesses_within_short_bound,
            r.left.witness_checks,
        ),
    );
    assert!(epis, "{:?} {:?}", r.right.failures, r.left.failures);
    assert!(long);
    assert_eq!((r.right.epis, r.left.epis), (258, 258));
    assert_eq!(
        (r.right.witness_checks, r.right.witnesses_within_short_bound),
        (2196, 2178)
    );
    assert_eq!(
        (r.left.witness_checks, r.left.witnesses_within_short_bound),
        (2196, 2178)
    );
}

/// The witness-length clause as stated. It does not hold; see the README.
#[test]
#[ignore]
fn criterion_2_short_witness_bound() {
    let cat = TubeCategory::new(Field::prime(2));
    let objs = cat.enumerate_objects(3).unwrap();
    let r = epi_mono_dichotomy_report(&cat, &objs, DichotomyParams::default()).unwrap();
    assert!(r.right.short_witnesses_hold(), "{:?}", r.right.failures);
    assert!(r.left.short_witnesses_hold(), "{:?}", r.left.failures);
}

#[test]
fn criterion_3_auslander_bijection() {
    settle(
        3,
        &[
            run(&AuslanderTableSuite, tube(2), None),
            run(&AuslanderTableSuite, a2(2), None),
        ],
    );
}

#[test]
fn criterion_4_dualizing_contrast() {
    let q = run(&DualizingContrastSuite, a2(2), None);
    let t = run(&DualizingContrastSuite, tube(2), None);
    assert_eq!(q.counters["exact_verdicts"], q.checks);
    settle(4, &[q, t]);
}

#[test]
fn criterion_5_almost_split() {
    settle(
        5,
        &[
            run(&AlmostSplitSuite, a2(2), Some(3)),
            run(&AlmostSplitSuite, tube(2), Some(3)),
        ],
    );
}

#[test]
fn criterion_6_projectively_trivial() {
    let out = run(&ProjTrivialSuite, tube(2), Some(3));
    assert!(out.counters["trivial"] > 0);
    settle(6, &[out]);
}

#[test]
fn criterion_7_right_equivalence() {
    let suite = RightEquivalenceSuite { pairs: 100 };
    let outs = [run(&suite, tube(2), None), run(&suite, a2(2), None)];
    assert_eq!(outs.iter().map(|o| o.counters["pairs"]).sum::<u64>(), 200);
    settle(7, &outs);
}

#[test]
fn criterion_8_infrastructure_and_determinism() {
    let infra = [
        run(&InfraSuite, tube(2), None),
        run(&InfraSuite, a2(3), None),
    ];
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../instances");
    let invocations: [&[&str]; 3] = [
        &["table", "tube_f2.json", "J2", "J2"],
        &["verify", "a2_f2.json", "all"],
        &["determined", "tube_f2.json", "z", "J1"],
    ];
    let mut identical = true;
    for args in invocations {
        let go = || {
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_detmor"));
            cmd.current_dir(dir).args(args);
            cmd.output().unwrap()
        };
        let (a, b) = (go(), go());
        assert!(
            !a.stdout.is_empty(),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        identical &= a.stdout == b.stdout && a.status.code() == b.status.code();
    }
    let ok = identical && infra.iter().all(|o| o.passed);
    verdict(
        8,
        ok,
        format!(
            "infra checks {}, reruns byte-identical: {identical}",
            infra[0].checks + infra[1].checks
        ),
    );
    assert!(identical);
    for o in &infra {
        assert!(o.passed && !o.vacuous, "{:?}", o.lines);
    }
}
