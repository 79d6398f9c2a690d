//! Acceptance gate: twelve end-to-end checks, one test (and one pass/fail
//! line) each. Every expected number here was either recomputed from scratch
//! by an independent sweep or is the recorded parameter set the build must
//! hit exactly; runtime ceilings are asserted where a check is time-boxed.
//!
//! The tests share a lock so wall-clock budgets are measured without other
//! tests of this binary competing for cores.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use lrc::analysis::{
    message_space_size, min_distance_exhaustive, report, verify_locality, DistancePolicy,
    RecoverySweep, DEFAULT_EXHAUSTIVE_BUDGET,
};
use lrc::catalog::{run_entry, select, CatalogEntry, RunStatus};
use lrc::config::{build_from_config, BuildOutcome, Config};
use lrc::engine::LinearCode;

static GATE: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|e| e.into_inner())
}

fn entry(id: &str) -> CatalogEntry {
    let mut found = select(id);
    assert_eq!(found.len(), 1, "expected exactly one entry for {id}");
    found.remove(0)
}

fn build(id: &str) -> BuildOutcome {
    let cfg = Config::parse(&entry(id).config).unwrap();
    build_from_config(&cfg).unwrap_or_else(|e| panic!("{id}: {e}"))
}

fn built_code(id: &str) -> (BuildOutcome, LinearCode) {
    let out = build(id);
    let code = out.code.clone().expect("build produced no code");
    (out, code)
}

fn fact(out: &BuildOutcome, key: &str) -> i64 {
    *out.facts
        .get(key)
        .unwrap_or_else(|| panic!("missing build counter {key}"))
}

fn within(start: Instant, budget: Duration, what: &str) {
    let took = start.elapsed();
    assert!(
        took <= budget,
        "{what} took {took:?}, over the {budget:?} ceiling"
    );
}

#[test]
fn a01_nine_coordinate_code_over_gf4_is_fully_certified_within_a_second() {
    let _g = serial();
    let start = Instant::now();

    let (out, code) = built_code("ex7.1");
    assert_eq!(fact(&out, "n"), 9);
    assert_eq!(fact(&out, "k_raw"), 9);
    assert_eq!(fact(&out, "k"), 6);
    assert_eq!(fact(&out, "k_raw") - fact(&out, "k"), 3); // kernel dimension

    // 4^6 - 1 = 4095 nonzero codewords, swept exhaustively.
    let d = min_distance_exhaustive(&code, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
    assert_eq!(d, 2);

    // Erase-and-repair round trips: every codeword, every position.
    let verdict = verify_locality(&code, RecoverySweep::Exhaustive).unwrap();
    assert!(verdict.pass, "{:?}", verdict.failures);
    assert_eq!(verdict.round_trips, 4096 * 9);

    within(start, Duration::from_secs(1), "criterion 1");
}

#[test]
fn a02_eighteen_coordinate_code_over_gf4_is_optimal_single_worker_within_a_minute() {
    let _g = serial();
    std::env::set_var("LRC_THREADS", "1");
    let start = Instant::now();

    let (out, code) = built_code("ex7.2");
    assert_eq!(fact(&out, "n"), 18);
    assert_eq!(fact(&out, "k_raw"), 16);
    assert_eq!(fact(&out, "k"), 11);
    assert_eq!(fact(&out, "k_raw") - fact(&out, "k"), 5); // kernel dimension

    // 4^11 - 1 = 4194303 nonzero codewords on one worker.
    let rep = report(
        &code,
        DistancePolicy::Exhaustive {
            budget: DEFAULT_EXHAUSTIVE_BUDGET,
        },
        RecoverySweep::MatrixOnly,
    )
    .unwrap();
    assert_eq!(rep.d_exact, Some(3));
    assert_eq!(rep.singleton_gap, 0, "the distance meets the bound");
    assert_eq!(rep.locality_verdict, "pass");

    within(start, Duration::from_secs(60), "criterion 2");
    std::env::remove_var("LRC_THREADS");
}

#[test]
fn a03_three_plane_codes_reach_distance_three_exactly_within_five_minutes() {
    let _g = serial();
    let start = Instant::now();

    for (id, n, k, q) in [
        ("ex7.4", 48, 31, 7),
        ("ex7.5", 24, 17, 5),
        ("ex7.6", 110, 87, 11),
    ] {
        let (out, code) = built_code(id);
        assert_eq!(fact(&out, "n"), n, "{id}");
        assert_eq!(fact(&out, "k"), k, "{id}");
        let rep = report(
            &code,
            DistancePolicy::LowWeight { w_max: 3 },
            RecoverySweep::MatrixOnly,
        )
        .unwrap();
        assert_eq!(rep.q, q, "{id}");
        assert_eq!(rep.d_exact, Some(3), "{id}");
        assert_eq!(rep.singleton_gap, 0, "{id} must meet the bound");
        assert_eq!(rep.locality_verdict, "pass", "{id}");
    }

    within(start, Duration::from_secs(300), "criterion 3");
}

#[test]
fn a04_all_twenty_six_plane_code_rows_reproduce_within_ten_minutes() {
    let _g = serial();
    let start = Instant::now();

    let rows = select("table1");
    assert_eq!(rows.len(), 26, "13 forms x 2 field degrees");
    for e in &rows {
        let outcome = run_entry(e);
        assert_eq!(
            outcome.status,
            RunStatus::Pass,
            "{}: {:?}",
            e.id,
            outcome.failures
        );
    }

    within(start, Duration::from_secs(600), "criterion 4");
}

#[test]
fn a05_eighty_one_point_curve_code_hits_its_parameters_at_both_ends() {
    let _g = serial();

    let (out, code) = built_code("ex3.1");
    assert_eq!(fact(&out, "curve_points"), 81);
    assert_eq!(fact(&out, "fibers"), 26);
    assert_eq!(fact(&out, "n"), 78);
    assert_eq!(fact(&out, "k"), 42);
    assert_eq!(fact(&out, "designed"), 13);

    // Every helper set must carry an everywhere-invertible recovery matrix.
    let verdict = verify_locality(&code, RecoverySweep::MatrixOnly).unwrap();
    assert!(verdict.pass, "{:?}", verdict.failures);
    assert_eq!(verdict.sets_checked, 26);

    let rep = report(&code, DistancePolicy::DesignedOnly, RecoverySweep::Random(100)).unwrap();
    assert_eq!(rep.singleton_gap, 4);

    // At the smallest message size the distance is certified exhaustively.
    let (out1, code1) = built_code("ex3.1-t1");
    assert_eq!(fact(&out1, "n"), 78);
    assert_eq!(fact(&out1, "k"), 2);
    assert_eq!(fact(&out1, "designed"), 73);
    let d = min_distance_exhaustive(&code1, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
    assert!(d >= 73, "exact distance {d} below the designed bound");
}

#[test]
fn a06_forty_four_point_curve_code_hits_its_parameters_at_both_ends() {
    let _g = serial();

    let (out, _) = built_code("ex3.2");
    assert_eq!(fact(&out, "curve_points"), 44);
    assert_eq!(fact(&out, "n"), 40);
    assert_eq!(fact(&out, "k"), 21);
    assert_eq!(fact(&out, "designed"), 9);

    let (out1, code1) = built_code("ex3.2-t1");
    assert_eq!(fact(&out1, "n"), 40);
    assert_eq!(fact(&out1, "k"), 3);
    assert_eq!(fact(&out1, "designed"), 33);
    let d = min_distance_exhaustive(&code1, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
    assert!(d >= 33, "exact distance {d} below the designed bound");
}

#[test]
fn a07_naive_recovery_basis_fails_on_exactly_two_helper_sets() {
    let _g = serial();

    let out = build("ex3.3-naive");
    assert!(out.code.is_none(), "structure checks only, no code assembly");
    assert_eq!(fact(&out, "fibers"), 14);
    assert_eq!(fact(&out, "failing_sets"), 2);
    assert_eq!(out.notes.len(), 2, "{:?}", out.notes);
    assert!(
        out.notes.iter().any(|n| n.contains("at inf")),
        "the helper set at infinity must fail: {:?}",
        out.notes
    );
    assert!(
        out.notes.iter().any(|n| n.contains("(0, 0)")),
        "the helper set pairing equal x-values must fail: {:?}",
        out.notes
    );
}

#[test]
fn a08_seven_degree_four_families_hit_their_featured_parameters_and_sound_distances() {
    let _g = serial();

    let featured = [
        ("ex4.1", 20usize, 9usize),
        ("ex4.2", 40, 24),
        ("ex4.3", 60, 39),
        ("ex4.4", 24, 12),
        ("ex4.5", 36, 21),
        ("ex4.6", 64, 42),
        ("ex4.7", 56, 36),
    ];
    let mut sweeps = 0usize;
    for (id, n, k) in featured {
        let (out, code) = built_code(id);
        assert_eq!(fact(&out, "n"), n as i64, "{id}");
        assert_eq!(fact(&out, "k"), k as i64, "{id}");
        assert_eq!(fact(&out, "designed"), 8, "{id}");
        let rep = report(&code, DistancePolicy::DesignedOnly, RecoverySweep::Random(50)).unwrap();
        assert_eq!(rep.singleton_gap, 2, "{id}");
        assert_eq!(rep.locality_verdict, "pass", "{id}");

        // Exact sweeps wherever the message space is affordable.
        for t in ["1", "2"] {
            let mut cfg = Config::parse(&entry(id).config).unwrap();
            cfg.set_override("t", t);
            let small = build_from_config(&cfg).unwrap().code.unwrap();
            let affordable = message_space_size(small.field.order(), small.k)
                .map(|s| s <= DEFAULT_EXHAUSTIVE_BUDGET)
                .unwrap_or(false);
            if !affordable {
                continue;
            }
            let d = min_distance_exhaustive(&small, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
            assert!(
                d as i64 >= small.designed_distance,
                "{id} at t = {t}: exact distance {d} below {}",
                small.designed_distance
            );
            sweeps += 1;
        }
    }
    assert_eq!(sweeps, 10, "affordable exact sweeps across the families");
}

#[test]
fn a09_sixty_three_point_quotient_code_verifies_at_both_message_sizes() {
    let _g = serial();

    let (out, code) = built_code("ex5.1");
    assert_eq!(fact(&out, "n"), 63);
    assert_eq!(fact(&out, "fibers"), 21);
    assert_eq!(fact(&out, "k"), 28);
    assert_eq!(fact(&out, "designed"), 13);

    let verdict = verify_locality(&code, RecoverySweep::MatrixOnly).unwrap();
    assert!(verdict.pass, "{:?}", verdict.failures);
    assert_eq!(verdict.sets_checked, 21, "one recovery matrix per helper set");

    let (out16, _) = built_code("ex5.1-t16");
    assert_eq!(fact(&out16, "n"), 63);
    assert_eq!(fact(&out16, "k"), 32);
    assert_eq!(fact(&out16, "designed"), 7);

    // The conflicting recorded summary row stays a documented discrepancy.
    let table_row = run_entry(&entry("ex5.1-table2"));
    assert_eq!(table_row.status, RunStatus::DiscrepancyDocumented);
}

#[test]
fn a10_cube_root_covers_match_their_recorded_split_counts_and_parameters() {
    let _g = serial();

    let (out2, _) = built_code("ex5.2");
    assert_eq!(fact(&out2, "split"), 57);
    assert_eq!(fact(&out2, "n"), 171);
    assert_eq!(fact(&out2, "k"), 102);
    // The recorded featured triple prints distance 13; the row's own rate
    // formula and this rebuild both give 15, documented as a discrepancy.
    assert_eq!(fact(&out2, "designed"), 15);
    assert!(fact(&out2, "designed") >= 13);
    assert_eq!(
        run_entry(&entry("ex5.2")).status,
        RunStatus::DiscrepancyDocumented
    );

    let (out3, _) = built_code("ex5.3");
    assert_eq!(fact(&out3, "split"), 15);
    assert_eq!(fact(&out3, "n"), 45);
    assert_eq!(fact(&out3, "k"), 22);
    assert_eq!(fact(&out3, "designed"), 9);

    let (out4, _) = built_code("ex5.4");
    assert_eq!(fact(&out4, "split"), 29);
    assert_eq!(fact(&out4, "n"), 87);
    // The family is parameterized by the message length: k = 2t with
    // designed distance 84 - 3t.
    for t in [10i64, 27] {
        let mut cfg = Config::parse(&entry("ex5.4").config).unwrap();
        cfg.set_override("t", &t.to_string());
        let out = build_from_config(&cfg).unwrap();
        assert_eq!(fact(&out, "n"), 87, "t = {t}");
        assert_eq!(fact(&out, "k"), 2 * t, "t = {t}");
        assert_eq!(fact(&out, "designed"), 84 - 3 * t, "t = {t}");
    }
}

#[test]
fn a11_two_partition_code_verifies_both_partitions_within_ten_minutes() {
    let _g = serial();
    let start = Instant::now();

    let (out, code) = built_code("ex6.1");
    assert_eq!(fact(&out, "n"), 81);
    assert_eq!(fact(&out, "k"), 28);
    assert_eq!(fact(&out, "designed"), 6);
    assert_eq!(fact(&out, "partitions"), 2);
    assert_eq!(code.partitions[0].groups.len(), 27);
    assert_eq!(code.partitions[1].groups.len(), 27);

    // Every helper set of both partitions passes its recovery check.
    let verdict = verify_locality(&code, RecoverySweep::MatrixOnly).unwrap();
    assert!(verdict.pass, "{:?}", verdict.failures);
    assert_eq!(verdict.sets_checked, 54);

    // The smallest message size is certified by the full 64^4 sweep.
    let (out1, code1) = built_code("ex6.1-t1");
    assert_eq!(fact(&out1, "n"), 81);
    assert_eq!(fact(&out1, "k"), 4);
    assert_eq!(fact(&out1, "designed"), 60);
    let d = min_distance_exhaustive(&code1, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
    assert!(d >= 60, "exact distance {d} below the designed bound");

    within(start, Duration::from_secs(600), "criterion 11");
}

#[test]
fn a12_property_suite_ships_and_stays_always_on() {
    let _g = serial();

    // The standing property suite must be part of the default test run.
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/properties.rs");
    let text = std::fs::read_to_string(&path).expect("property suite is missing");
    assert!(text.contains("proptest!"), "randomized properties are gone");
    assert!(
        !text.contains("#[ignore]"),
        "the property suite must not be opt-in"
    );
    for required in [
        "fn distance_algorithms_agree",
        "fn designed_distance_is_sound_on_every_affordable_build",
        "fn generator_entries_match_first_principles_evaluation",
        "fn erasure_recovery_round_trips_and_passes_parity",
        "fn curve_point_counts_sit_in_the_hasse_interval",
        "fn field_axioms_hold_exhaustively",
    ] {
        assert!(text.contains(required), "missing property: {required}");
    }

    // Spot-run one cross-check here so this gate fails even if the suite's
    // file is present but its subject has regressed: the two distance
    // algorithms must agree on a freshly built code.
    let (_, code) = built_code("ex7.1");
    let d = min_distance_exhaustive(&code, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
    assert_eq!(
        lrc::analysis::min_distance_low_weight(&code, d).unwrap(),
        lrc::analysis::DistanceBound::Exact(d)
    );
}
