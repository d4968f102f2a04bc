use num_traits::Zero;
use tlwg_core::algebra::{chebyshev_delta, RationalFunction};
use tlwg_core::diagram::{generator_u, markov_trace, TLElement};
use tlwg_core::jones_wenzl::{jw_via_weingarten, jw_wenzl_recursion, verify_candidate, verify_jw};
use tlwg_core::nc2::enumerate_nc2;
use tlwg_core::{Error, Pairing};

#[test]
fn small_projections() {
    let q1 = jw_wenzl_recursion(1).unwrap();
    assert_eq!(q1, TLElement::identity(1));
    let q2 = jw_wenzl_recursion(2).unwrap();
    let cup_cap = generator_u(1, 2).unwrap();
    assert_eq!(q2.coeff(&cup_cap), -RationalFunction::d_pow(-1));
    assert_eq!(q2.len(), 2);
}

#[test]
fn both_constructions_agree() {
    for k in 1..=4 {
        assert_eq!(
            jw_wenzl_recursion(k).unwrap(),
            jw_via_weingarten(k).unwrap()
        );
        let report = verify_jw(k).unwrap();
        assert!(report.checks.iter().all(|c| c.passed));
        assert_eq!(report.checks.len(), 2 * (k - 1) + 5);
    }
}

#[test]
fn traces_follow_chebyshev() {
    let d = RationalFunction::d();
    let traces: Vec<RationalFunction> = (1..=6)
        .map(|k| markov_trace(&jw_wenzl_recursion(k).unwrap()))
        .collect();
    for (k, t) in traces.iter().enumerate() {
        assert_eq!(t, &RationalFunction::from_poly(chebyshev_delta(k + 1)));
    }
    for k in 1..5 {
        assert_eq!(&d * &traces[k], &traces[k + 1] + &traces[k - 1]);
    }
}

#[test]
fn every_coefficient_is_non_zero() {
    for k in 1..=5 {
        let q = jw_wenzl_recursion(k).unwrap();
        let basis = enumerate_nc2(k).unwrap();
        assert_eq!(q.len(), basis.len());
        assert!(basis.iter().all(|p| !q.coeff(p).is_zero()));
        assert_eq!(
            q.coeff(&Pairing::identity(k)),
            RationalFunction::from_integer(1)
        );
    }
}

#[test]
fn tampered_candidate_fails_idempotence() {
    let two = RationalFunction::from_integer(2);
    let bad = TLElement::identity(2)
        .sub(
            &TLElement::basis(&generator_u(1, 2).unwrap())
                .scale(&(&two * &RationalFunction::d_pow(-1))),
        )
        .unwrap();
    match verify_candidate(&bad) {
        Err(Error::VerificationFailure(msg)) => assert!(msg.contains("idempotent"), "{msg}"),
        other => panic!("expected a failure, got {other:?}"),
    }
}

#[test]
fn cap() {
    assert!(matches!(
        jw_wenzl_recursion(11),
        Err(Error::SizeLimitExceeded { .. })
    ));
}
