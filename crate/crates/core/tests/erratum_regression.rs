//! The corrected classification: F-finite iff divisorial. An Abhyankar
//! valuation of rational rank two is not F-finite, although an earlier
//! version of the theory claimed every Abhyankar valuation ring was.

mod common;

use common::irrational;
use frobval::classifier::{classify, Citation, Verdict};

#[test]
fn abhyankar_rank_two_is_not_f_finite() {
    for p in [2u64, 3, 5, 7] {
        let r = classify(&irrational(p)).unwrap();
        assert!(r.abhyankar_geometric && r.abhyankar_numeric);
        assert_eq!(r.f_finite.value, Verdict::No);
        assert!(r.f_finite.reasons.contains(&Citation::IndexAboveP));
    }
}

/// Encodes the retracted claim directly. It must fail.
#[test]
#[should_panic(expected = "Abhyankar but not F-finite")]
fn retracted_claim_abhyankar_implies_f_finite() {
    let r = classify(&irrational(5)).unwrap();
    if r.abhyankar() {
        assert!(
            r.f_finite.value == Verdict::Yes,
            "Abhyankar but not F-finite"
        );
    }
}
