//! Acceptance suite: every release-gating property, each printed as one
//! pass/fail line. Factors and tolerances are pinned in code; ground truth
//! is always an exhaustive oracle.
//!
//! Run with: cargo test --test acceptance -- --nocapture

use refpoint::covering::{brute_integral_rp, rp_via_lp_rounding, vertex_cover_instance, RoundingRule};
use refpoint::norm::{Norm, ReferenceContext};
use refpoint::rational::Rat;
use refpoint::run::{self, OutputFormat, VerifyReport};
use refpoint::{ObjectiveVector, Sense};
use std::time::{Duration, Instant};

const SEED: u64 = 0;

fn threads() -> usize {
    std::env::var("REFPOINT_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(2)
}

fn report_line(criterion: &str, report: &VerifyReport, elapsed: Option<Duration>) {
    let status = if report.violations == 0 { "PASS" } else { "FAIL" };
    match elapsed {
        Some(t) => println!(
            "ACCEPTANCE {}: {} ({} checks, {} violations, {:.2?})",
            criterion,
            status,
            report.rows.len(),
            report.violations,
            t
        ),
        None => println!(
            "ACCEPTANCE {}: {} ({} checks, {} violations)",
            criterion,
            status,
            report.rows.len(),
            report.violations
        ),
    }
    if report.violations > 0 {
        for row in report.rows.iter().filter(|r| !r.pass).take(10) {
            println!("  VIOLATION {} {} claimed {} observed {}", row.instance, row.check, row.claimed, row.observed);
        }
    }
}

/// Criterion 1: selection factors over 200 random integral instances with
/// brute-force ground truth -- ratio <= alpha for reference point selection,
/// <= alpha^2 for the derived compromise route, <= k for the weighted sum
/// route -- all exact, zero violations, within a minute.
#[test]
fn criterion_1_reduction_factor_suite() {
    let t0 = Instant::now();
    let report = run::verify_reduction_factors(SEED, 200, threads());
    let elapsed = t0.elapsed();
    report_line("1 (reduction factors)", &report, Some(elapsed));
    assert_eq!(report.violations, 0);
    assert!(report.rows.len() >= 600, "3 checks on each of 200 instances");
    assert!(elapsed < Duration::from_secs(60), "runtime budget exceeded: {:?}", elapsed);
}

/// Criterion 2: every Gap answer produced by the reference-point reductions
/// is enumeration-verified, with exact solvers and with adversarial solvers
/// sitting exactly on the beta = alpha^2/(2 alpha - 1) boundary, at
/// alpha in {1.1, 2, 10}.
#[test]
fn criterion_2_gap_soundness() {
    let report = run::verify_gap_soundness(SEED, 200, threads());
    report_line("2 (gap soundness)", &report, None);
    assert_eq!(report.violations, 0);
    let boundary_rows = report
        .rows
        .iter()
        .filter(|r| r.check == "gap-rp-inf-boundary")
        .count();
    assert!(boundary_rows >= 200 * 3 * 4, "boundary solver exercised per alpha and query");
}

/// Criterion 3: the geometric grid over an exact Gap oracle covers the exact
/// Pareto set within alpha^2 on every corpus instance, for alpha in {1.1, 2},
/// and closes the cycle as an alpha^2 reference point solver.
#[test]
fn criterion_3_equivalence_cycle() {
    let report = run::verify_equivalence_cycle(SEED, 200, threads());
    report_line("3 (equivalence cycle)", &report, None);
    assert_eq!(report.violations, 0);
    assert_eq!(report.rows.len(), 200 * 4);
}

/// Criterion 4: on k = 2 instances with M <= 20, the weight construction
/// makes every Pareto point the strict brute-force minimizer at
/// p = threshold + 1, for both the cornered (threshold kM) and the l^p
/// (threshold from log k / log(1 + 1/M)) families.
#[test]
fn criterion_4_weight_reachability() {
    let report = run::verify_weights(SEED, 200, threads());
    report_line("4 (weight reachability)", &report, None);
    assert_eq!(report.violations, 0);
    assert!(
        report.rows.len() >= 2 * 200,
        "both families on every Pareto point of every instance"
    );
}

/// Criterion 5: on 50 random digraphs (<= 25 nodes, costs <= 50, k = 2) the
/// scaling FPTAS stays within (1 + eps) of the label solver for
/// eps in {1/2, 1/10}, and the label solver matches exhaustive path
/// enumeration on small graphs -- exact rational comparisons, within two
/// minutes.
#[test]
fn criterion_5_fptas() {
    let t0 = Instant::now();
    let epsilons = [Rat::new(1, 2), Rat::new(1, 10)];
    let report = run::verify_fptas(SEED, 50, threads(), &epsilons);
    let elapsed = t0.elapsed();
    report_line("5 (shortest-path fptas)", &report, Some(elapsed));
    assert_eq!(report.violations, 0);
    assert!(elapsed < Duration::from_secs(120), "runtime budget exceeded: {:?}", elapsed);
}

/// Criterion 6: the reference point LP matches vertex enumeration on random
/// two-variable polytopes; the triangle vertex cover pipeline reproduces the
/// pinned numbers (fractional (1/2,1/2,1/2), rounded cost 3, integral
/// optimum 2, ratio 3/2 <= kappa = 2); random covers never exceed kappa.
#[test]
fn criterion_6_lp_and_rounding() {
    // The pinned triangle pipeline, asserted value by value.
    let inst = vertex_cover_instance(
        3,
        &[(0, 1), (0, 2), (1, 2)],
        &vec![ObjectiveVector::from_ints(&[1, 1]); 3],
    )
    .unwrap();
    let ctx = ReferenceContext::new(
        ObjectiveVector::zero(2),
        Norm::unit_infinity(2),
        Sense::Min,
    )
    .unwrap()
    .verified();
    let rule = RoundingRule::hochbaum(&inst);
    let rounded = rp_via_lp_rounding(&inst, &ctx, &rule).unwrap();
    assert_eq!(rounded.fractional, vec![Rat::new(1, 2); 3]);
    assert_eq!(rounded.r_value, Rat::from_int(3));
    let (_, _, opt) = brute_integral_rp(&inst, &ctx).unwrap();
    assert_eq!(opt, Rat::from_int(2));
    assert_eq!(&rounded.r_value / &opt, Rat::new(3, 2));
    assert_eq!(rule.factor, Rat::from_int(2));

    let report = run::verify_lp(SEED, 30, threads());
    report_line("6 (lp and rounding)", &report, None);
    assert_eq!(report.violations, 0);
}

/// Criterion 7: the weighted-sum counterexample never returns the balanced
/// point over a 100-weight grid; maximization Gap answers are
/// enumeration-verified; the compromise indistinguishability construction at
/// M = 1000, eps = 1/2 reproduces both weight regimes.
#[test]
fn criterion_7_maximization() {
    let report = run::verify_max(SEED, 50, threads());
    report_line("7 (maximization)", &report, None);
    assert_eq!(report.violations, 0);
    assert!(report.rows.iter().any(|r| r.check == "ws-counterexample" && r.pass));
    assert!(report.rows.iter().any(|r| r.check == "cp-indistinguishable" && r.pass));
}

/// Criterion 8: the verification front end is deterministic -- identical
/// seed and configuration produce byte-identical documents, independent of
/// the thread count.
#[test]
fn criterion_8_determinism() {
    let first = run::cmd_verify("reductions", 0, Some(8), None, 1, OutputFormat::Csv);
    let second = run::cmd_verify("reductions", 0, Some(8), None, 1, OutputFormat::Csv);
    let threaded = run::cmd_verify("reductions", 0, Some(8), None, 4, OutputFormat::Csv);
    let pass = first.document == second.document && first.document == threaded.document;
    println!(
        "ACCEPTANCE 8 (determinism): {} ({} bytes per report)",
        if pass { "PASS" } else { "FAIL" },
        first.document.len()
    );
    assert_eq!(first.document, second.document);
    assert_eq!(first.document, threaded.document);
    assert_eq!(first.exit_code, 0);

    // JSON documents are deterministic too.
    let a = run::cmd_verify("max", 0, Some(3), None, 1, OutputFormat::Json);
    let b = run::cmd_verify("max", 0, Some(3), None, 2, OutputFormat::Json);
    assert_eq!(a.document, b.document);
}

/// The negative control behind the suites: a solver that lies about its
/// factor must be flagged.
#[test]
fn tampered_solver_negative_control() {
    let report = run::verify_reductions_tampered(SEED, 6, threads());
    println!(
        "NEGATIVE CONTROL (tampered solver): {} ({} violations flagged)",
        if report.violations > 0 { "PASS" } else { "FAIL" },
        report.violations
    );
    assert!(report.violations > 0);
    assert_eq!(report.exit_code(), run::EXIT_VIOLATION);
}
