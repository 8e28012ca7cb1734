//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Every tolerance here is exact equality of rationals; runtime budgets are
//! asserted where the criterion states one.

use std::time::{Duration, Instant};

use qhk_ops::CoefficientId;
use qhk_verify::checks::{
    check_corollary, check_lemma1, check_lemma2, check_lemma3, check_structure, check_traces,
    reproduction_checks_pass, CheckContext,
};
use qhk_verify::kernel::kernel_oracle;
use qhk_verify::report::CheckStatus;

fn ctx(n: u32) -> CheckContext {
    CheckContext::new(n, false, None).unwrap()
}

fn announce(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_1_lemma1_reproduction() {
    for n in 2..=5u32 {
        let started = Instant::now();
        let report = check_lemma1(&ctx(n)).unwrap();
        let elapsed = started.elapsed();
        announce(
            &format!("1 (lemma1, n = {n})"),
            report.passed() && elapsed < Duration::from_secs(10),
            &format!("{} in {} ms", report.description, elapsed.as_millis()),
        );
    }
}

#[test]
fn criterion_2_lemma2_reproduction() {
    for n in 2..=5u32 {
        let report = check_lemma2(&ctx(n)).unwrap();
        announce(&format!("2 (lemma2, n = {n})"), report.passed(), &report.description);
    }
}

#[test]
fn criterion_3_lemma3_reproduction() {
    for n in 2..=5u32 {
        let (main, sub) = check_lemma3(&ctx(n)).unwrap();
        let sub_ok = if n == 2 {
            sub.status == CheckStatus::Vacuous
        } else {
            sub.passed()
        };
        announce(
            &format!("3 (lemma3, n = {n})"),
            main.passed() && sub_ok,
            &format!("{}; primitive sub-check: {:?}", main.description, sub.status),
        );
    }
}

#[test]
fn criterion_4_corollary_reproduction() {
    for n in 2..=5u32 {
        let (main, sub) = check_corollary(&ctx(n)).unwrap();
        let sub_ok = if n == 2 {
            sub.status == CheckStatus::Vacuous
        } else {
            sub.passed()
        };
        announce(
            &format!("4 (corollary, n = {n})"),
            main.passed() && sub_ok,
            &main.description,
        );
    }
}

#[test]
fn criterion_5_trace_identities() {
    let report = check_traces(&ctx(2), 12345, 50).unwrap();
    announce("5 (traces, n = 2, full basis)", report.passed(), &report.description);
    for n in 3..=4u32 {
        let report = check_traces(&ctx(n), 12345, 50).unwrap();
        announce(&format!("5 (traces, n = {n}, 50 samples)"), report.passed(), &report.description);
    }
}

#[test]
fn criterion_6_kernel_oracle() {
    let started = Instant::now();
    let report = kernel_oracle(&ctx(2), false).unwrap();
    let elapsed = started.elapsed();
    announce(
        "6 (kernel, n = 2)",
        report.domain_dim == 120
            && report.kernel_dim <= 64
            && report.contained_in_allowed
            && report.reverified
            && elapsed < Duration::from_secs(60),
        &format!(
            "domain {} kernel {} (bound {}) in {} ms",
            report.domain_dim,
            report.kernel_dim,
            report.allowed_dim_bound,
            elapsed.as_millis()
        ),
    );

    let started = Instant::now();
    let report = kernel_oracle(&ctx(3), false).unwrap();
    let elapsed = started.elapsed();
    announce(
        "6 (kernel, n = 3)",
        report.domain_dim == 504
            && report.contained_in_allowed
            && report.reverified
            && elapsed < Duration::from_secs(900),
        &format!(
            "domain {} kernel {} (bound {}) in {} ms",
            report.domain_dim,
            report.kernel_dim,
            report.allowed_dim_bound,
            elapsed.as_millis()
        ),
    );
}

#[test]
fn criterion_7_structure_invariants() {
    for n in 2..=5u32 {
        let report = check_structure(&ctx(n)).unwrap();
        announce(&format!("7 (structure, n = {n})"), report.passed(), &report.description);
    }
}

#[test]
fn criterion_8_mutation_sensitivity() {
    // unmutated baseline must pass
    let baseline = reproduction_checks_pass(&ctx(2)).unwrap();
    announce("8 (baseline, n = 2)", baseline, "all four reproduction checks pass unmutated");

    let flipped = CheckContext::new(2, true, None).unwrap();
    announce(
        "8 (flipped omega_H sign)",
        !reproduction_checks_pass(&flipped).unwrap(),
        "at least one reproduction check must fail",
    );

    for which in [
        CoefficientId::ValuePart,
        CoefficientId::WedgePart,
        CoefficientId::DualPart,
    ] {
        let mutated = CheckContext::new(2, false, Some(which)).unwrap();
        announce(
            &format!("8 (perturbed {which:?})"),
            !reproduction_checks_pass(&mutated).unwrap(),
            "at least one reproduction check must fail",
        );
    }
}
