//! The acceptance suite: every verification criterion at its stated
//! tolerance, one pass/fail line per criterion. All checks are exact; the
//! budgets are wall-clock ceilings from the verification contract.

use liegrade::verify::{
    criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8,
    criterion9, VerifyOptions,
};

fn opts() -> VerifyOptions {
    VerifyOptions {
        max_rank: 5,
        cap: None,
    }
}

#[test]
fn criterion_1_gradation_sweep_rank_5() {
    let r = criterion1(&opts());
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_2_type_i_oracle_rank_4() {
    let r = criterion2(&opts());
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_3_exception_witnesses() {
    let r = criterion3(&opts());
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_4_restricted_exceptions() {
    let r = criterion4(&opts());
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_5_equation_counts() {
    let r = criterion5(&VerifyOptions {
        max_rank: 6,
        cap: None,
    });
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
    assert!(
        r.details.contains("l=3: rank 3 kernel 5")
            && r.details.contains("l=4: rank 8 kernel 10")
            && r.details.contains("l=5: rank 15 kernel 17")
            && r.details.contains("l=6: rank 24 kernel 26"),
        "{}",
        r.details
    );
}

#[test]
fn criterion_6_tables_rank_6() {
    let r = criterion6(&VerifyOptions {
        max_rank: 6,
        cap: None,
    });
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_7_embeddings() {
    let r = criterion7(&VerifyOptions {
        max_rank: 4,
        cap: None,
    });
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_8_p2_structures() {
    let r = criterion8(&opts());
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_9_mutation_robustness() {
    let r = criterion9(&opts());
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}
