//! End-to-end acceptance gate: one test per criterion, each printing a
//! PASS/FAIL line. All checks are exact (zero tolerance) and each suite
//! finishes well within the time budget.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::process::Command;
use std::time::Instant;
use tatekit::basefield::FieldSpec;
use tatekit::geometry;
use tatekit::liftings::{self, FalsifyVerdict, LiftingSpec, QMap};
use tatekit::operator::OperatorExpr;
use tatekit::series::{Exponents, TruncatedSeries};
use tatekit::suite::{self, RunConfig};

fn gate(name: &str, passed: bool, detail: &str) {
    println!(
        "[{}] {}: {}",
        if passed { "PASS" } else { "FAIL" },
        name,
        detail
    );
    assert!(passed, "{} failed: {}", name, detail);
}

fn cfg() -> RunConfig {
    RunConfig {
        seed: 1,
        samples: 200,
        radius: 8,
        precision: 6,
    }
}

fn suite_line(report: &tatekit::suite::Report, check: &str) -> (bool, String) {
    match report.checks.iter().find(|c| c.name == check) {
        Some(c) => (c.passed, c.detail.clone()),
        None => (false, format!("check '{}' missing", check)),
    }
}

#[test]
fn criterion_1_ring_and_field_suite() {
    let start = Instant::now();
    let report = &suite::run_suite("ring", &cfg()).unwrap()[0];
    for check in [
        "field-axioms",
        "frobenius",
        "series-distributivity",
        "inversion-contract",
        "residue-lift-laws",
    ] {
        let (ok, detail) = suite_line(report, check);
        gate(&format!("criterion-1 {}", check), ok, &detail);
    }
    gate(
        "criterion-1 budget",
        start.elapsed().as_secs() < 60,
        &format!("{} ms", start.elapsed().as_millis()),
    );
}

#[test]
fn criterion_2_valuation_suite() {
    let report = &suite::run_suite("ring", &cfg()).unwrap()[0];
    let (ok, detail) = suite_line(report, "valuation-laws");
    gate("criterion-2 valuation", ok, &detail);
}

#[test]
fn criterion_3_lattice_suite() {
    let start = Instant::now();
    let report = &suite::run_suite("lattice", &cfg()).unwrap()[0];
    for check in [
        "enumeration",
        "meet-join-extremality",
        "sandwich",
        "quotient-grading",
        "poset-laws",
    ] {
        let (ok, detail) = suite_line(report, check);
        gate(&format!("criterion-3 {}", check), ok, &detail);
    }
    gate(
        "criterion-3 budget",
        start.elapsed().as_secs() < 60,
        &format!("{} ms", start.elapsed().as_millis()),
    );
}

#[test]
fn criterion_4_cubical_suite() {
    let start = Instant::now();
    let report = &suite::run_suite("cubical", &cfg()).unwrap()[0];
    for check in [
        "idempotent-axioms-n2",
        "projected-ideals-n2",
        "decompose-identity-n2",
        "two-sided-law-n2",
        "idempotent-axioms-n3",
        "projected-ideals-n3",
        "decompose-identity-n3",
        "two-sided-law-n3",
    ] {
        let (ok, detail) = suite_line(report, check);
        gate(&format!("criterion-4 {}", check), ok, &detail);
    }
    gate(
        "criterion-4 budget",
        start.elapsed().as_secs() < 60,
        &format!("{} ms", start.elapsed().as_millis()),
    );
}

#[test]
fn criterion_5_agreement_suite() {
    let start = Instant::now();
    let config = cfg(); // >= 200 operators at radius 8 over n = 2
    assert!(config.samples >= 200 && config.radius == 8);
    let report = &suite::run_suite("agreement", &config).unwrap()[0];
    let (ok, detail) = suite_line(report, "classifier-agreement");
    gate("criterion-5 zero-contradictions", ok, &detail);
    let (ok, detail) = suite_line(report, "unknown-budget");
    gate("criterion-5 unknown-budget<=5%", ok, &detail);
    gate(
        "criterion-5 budget",
        start.elapsed().as_secs() < 60,
        &format!("{} ms", start.elapsed().as_millis()),
    );
}

#[test]
fn criterion_6_transfer_soundness() {
    let report = &suite::run_suite("transfer", &cfg()).unwrap()[0];
    let (ok, detail) = suite_line(report, "transfer-soundness");
    gate("criterion-6 soundness>=1000", ok, &detail);
}

#[test]
fn criterion_7_liftings_suite() {
    // falsifier refutes Q(i) = -i at radius 10 with valid witnesses
    let verdict = liftings::falsify_with_q(QMap::NegIdentity, &FieldSpec::Rationals, 10).unwrap();
    let ok = match &verdict {
        FalsifyVerdict::NotATateMorphism { witnesses } => {
            witnesses.len() == 11
                && witnesses.iter().all(|w| {
                    w.escaping_exponent.0 < -w.candidate_m && w.escaping_exponent.1 == 1
                })
        }
        _ => false,
    };
    gate(
        "criterion-7 falsifier-neg",
        ok,
        "NOT_A_TATE_MORPHISM with escape witnesses for every m <= 10",
    );
    let std_ok = matches!(
        liftings::falsify_tate(&LiftingSpec::Standard, &FieldSpec::Rationals, 10).unwrap(),
        FalsifyVerdict::MorphismPlausible {
            containing_lattice: 0
        }
    );
    gate("criterion-7 falsifier-standard", std_ok, "MORPHISM_PLAUSIBLE at m = 0");
    let pos_ok = matches!(
        liftings::falsify_with_q(QMap::PosIdentity, &FieldSpec::Rationals, 10).unwrap(),
        FalsifyVerdict::MorphismPlausible { .. }
    );
    gate("criterion-7 falsifier-pos", pos_ok, "MORPHISM_PLAUSIBLE for Q(i) = +i");
    let report = &suite::run_suite("liftings", &cfg()).unwrap()[0];
    let (ok, detail) = suite_line(report, "section-property");
    gate("criterion-7 section", ok, &detail);
}

#[test]
fn criterion_8_geometry_suite() {
    // Hensel with N = 8 must finish in under a second
    let start = Instant::now();
    let model = geometry::hensel_coefficient_field(5, &[3, 0, 1], 8).unwrap();
    let hensel_ms = start.elapsed().as_millis();
    // exact check: reconstruct a and verify a^2 = 2 mod pi^8
    use tatekit::basefield::PolyFp;
    let p = 5u64;
    let f = [3u64, 0, 1];
    let mut modulus = vec![1u64];
    for _ in 0..8 {
        modulus = PolyFp::mul(&modulus, &f, p);
    }
    let mut a: Vec<u64> = Vec::new();
    let mut power = vec![1u64];
    for digit in &model.embedding {
        a = PolyFp::add(&a, &PolyFp::mul(digit, &power, p), p);
        power = PolyFp::mul(&power, &f, p);
    }
    let a2 = PolyFp::rem(&PolyFp::mul(&a, &a, p), &modulus, p);
    gate(
        "criterion-8 hensel",
        PolyFp::sub(&a2, &[2], p).is_empty() && hensel_ms < 1000,
        &format!("a^2 = 2 mod pi^8, {} ms", hensel_ms),
    );
    gate(
        "criterion-8 gaps",
        geometry::semigroup_gaps(&[2, 3]).unwrap() == vec![1]
            && geometry::semigroup_gaps(&[3, 5]).unwrap() == vec![1, 2, 4, 7],
        "gaps(2,3) = {1} and gaps(3,5) = {1,2,4,7}",
    );
    let cusp = geometry::CuspModel::default();
    use geometry::CuspVerdict;
    let verdicts_ok = matches!(
        cusp.realizability_of_valuation(0),
        CuspVerdict::Realizable { .. }
    ) && matches!(
        cusp.realizability_of_valuation(2),
        CuspVerdict::Realizable { .. }
    ) && cusp.realizability_of_valuation(1)
        == CuspVerdict::Unrealizable { gap_witness: 1 };
    gate(
        "criterion-8 cusp",
        verdicts_ok,
        "v=0,2 REALIZABLE; v=1 UNREALIZABLE with gap witness",
    );
    let profile = geometry::OpenProfile::thinning();
    let cover = geometry::parshin_cover(&profile, (-3, -3), (3, 3));
    let cover_ok = cover.len() == 49
        && cover.iter().all(|fact| {
            profile.contains(&Exponents(vec![fact.factor_in_full.0, fact.factor_in_full.1]))
                && profile.contains(&Exponents(vec![
                    fact.factor_compensating.0,
                    fact.factor_compensating.1,
                ]))
        });
    gate(
        "criterion-8 parshin",
        cover_ok,
        "all 49 monomials in the 7x7 box factor inside V",
    );
}

#[test]
fn criterion_9_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_tatekit"))
            .args(["suite", "run", "all", "--seed", "1"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    gate(
        "criterion-9 determinism",
        first.status.success()
            && first.stdout == second.stdout
            && !first.stdout.is_empty(),
        &format!(
            "two runs of `suite run all --seed 1`: {} identical bytes",
            first.stdout.len()
        ),
    );
}

/// Worked examples from the operation contracts, asserted exactly.
#[test]
fn spec_examples_exact() {
    let q = FieldSpec::Rationals;
    // apply(Proj(1,0), t1^-2 + 3 + t1^5) = 3 + t1^5
    let x = TruncatedSeries::polynomial(q.clone(), &[(vec![-2], 1), (vec![0], 3), (vec![5], 1)]);
    let y = OperatorExpr::Proj(1, 0).apply(&x).unwrap();
    gate(
        "example proj-apply",
        y.coeffs().len() == 2 && y.coeff(&Exponents(vec![0])).is_some(),
        "keeps the nonnegative part",
    );
    // inv(1 - t1) to precision 4 = 1 + t1 + t1^2 + t1^3
    let a = TruncatedSeries::polynomial(q.clone(), &[(vec![0], 1), (vec![1], -1)]);
    let inv = a.inv(&[4]).unwrap();
    gate(
        "example geometric-inverse",
        (0..4).all(|k| inv.coeff(&Exponents(vec![k])).is_some_and(|c| c.is_one())),
        "1 + t1 + t1^2 + t1^3",
    );
    // lift of the twisted generator: t1^2 -> t1^2 + t1^-2 t2
    let spec = LiftingSpec::twisted_family(QMap::NegIdentity, 10);
    let b2 = TruncatedSeries::polynomial(q, &[(vec![2], 1)]);
    let lifted = spec.lift(&b2).unwrap();
    gate(
        "example twisted-lift",
        lifted.coeff(&Exponents(vec![2, 0])).is_some()
            && lifted.coeff(&Exponents(vec![-2, 1])).is_some(),
        "b_2 + t1^(-2) t2",
    );
}
