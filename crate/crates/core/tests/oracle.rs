mod common;

use common::{all, pr};
use num_traits::{One, Zero};
use tlwg_core::algebra::expand_at_infinity;
use tlwg_core::algebra::{parse_rational, BigRational, RationalFunction};
use tlwg_core::diagram::{bilinear_form, TLElement};
use tlwg_core::nc2::join_block_count;
use tlwg_core::oracle::{
    dual_basis_element, haar_moment, weingarten_exact, weingarten_exact_capped, weingarten_row,
    Mode, OracleCaps,
};
use tlwg_core::{Error, Pairing};

/// A multi-index whose kernel is exactly the partition of `p`.
fn index_with_kernel(p: &Pairing) -> Vec<usize> {
    let mut label = vec![0; p.len()];
    for (b, (x, y)) in p.blocks().into_iter().enumerate() {
        label[x - 1] = b + 1;
        label[y - 1] = b + 1;
    }
    label
}

fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

#[test]
fn two_by_two_entries() {
    let w = weingarten_exact(2, Mode::Symbolic).unwrap();
    let (p, qq) = (pr("{1,2}{3,4}"), pr("{1,4}{2,3}"));
    assert_eq!(w.entry(&p, &qq).unwrap().to_string(), "-1/(d^3 - d)");
    assert_eq!(w.entry(&qq, &qq).unwrap().to_string(), "1/(d^2 - 1)");
    assert_eq!(w.entry(&p, &p).unwrap().to_string(), "1/(d^2 - 1)");
    let n = weingarten_exact(2, Mode::Numeric(q("3"))).unwrap();
    assert_eq!(n.value(&p, &qq).unwrap(), &q("-1/24"));
}

#[test]
fn symbolic_identity_small() {
    for k in 1..=3 {
        let w = weingarten_exact(k, Mode::Symbolic).unwrap();
        assert!(w.gram_product_is_identity());
        assert!(w.is_symmetric());
    }
}

#[test]
fn numeric_identity_small() {
    for d in ["3", "7/2", "-5/2"] {
        for k in 1..=4 {
            let w = weingarten_exact(k, Mode::Numeric(q(d))).unwrap();
            assert!(w.gram_product_is_identity(), "k={k} d={d}");
            assert!(w.is_symmetric());
        }
    }
}

#[test]
fn numeric_agrees_with_symbolic() {
    for k in 1..=4 {
        let s = weingarten_exact(k, Mode::Symbolic).unwrap();
        for d in ["2", "3", "-7/3"] {
            let n = weingarten_exact(k, Mode::Numeric(q(d))).unwrap();
            for p in all(k) {
                for r in all(k) {
                    assert_eq!(
                        &s.entry(p, r).unwrap().eval(&q(d)).unwrap(),
                        n.value(p, r).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn signs_and_non_vanishing() {
    for k in 1..=5 {
        for d in ["2", "3"] {
            let n = weingarten_exact(k, Mode::Numeric(q(d))).unwrap();
            for p in all(k) {
                for r in all(k) {
                    let x = n.value(p, r).unwrap();
                    assert!(!x.is_zero(), "k={k} d={d}");
                    let even = (k + join_block_count(p, r).unwrap()).is_multiple_of(2);
                    assert_eq!(x > &BigRational::zero(), even, "k={k} d={d} {p} {r}");
                }
            }
        }
    }
}

#[test]
fn singular_points() {
    for d in ["0", "1", "-1"] {
        assert!(matches!(
            weingarten_exact(2, Mode::Numeric(q(d))),
            Err(Error::SingularGram { .. })
        ));
    }
    // Δ_3 vanishes at d² = 2, which is irrational; d = 0 is singular for k = 3.
    assert!(weingarten_exact(3, Mode::Numeric(q("0"))).is_err());
}

#[test]
fn size_caps() {
    assert!(matches!(
        weingarten_exact(6, Mode::Symbolic),
        Err(Error::SizeLimitExceeded { .. })
    ));
    assert!(matches!(
        weingarten_exact(7, Mode::Numeric(q("3"))),
        Err(Error::SizeLimitExceeded { .. })
    ));
    let caps = OracleCaps {
        symbolic: 1,
        numeric: 1,
    };
    assert!(weingarten_exact_capped(2, Mode::Symbolic, caps).is_err());
}

#[test]
fn rows_match_the_inverse() {
    let w = weingarten_exact(4, Mode::Symbolic).unwrap();
    for p in all(4).iter().step_by(3) {
        for (r, f) in weingarten_row(p).unwrap() {
            assert_eq!(w.entry(p, &r).unwrap(), &f);
        }
    }
}

#[test]
fn dual_basis_is_dual() {
    for k in 1..=4 {
        for p in all(k) {
            let dual = dual_basis_element(p).unwrap();
            for r in all(k) {
                let f = bilinear_form(&TLElement::basis(r), &dual).unwrap();
                let expected = if r == p {
                    RationalFunction::one()
                } else {
                    RationalFunction::zero()
                };
                assert_eq!(f, expected);
            }
        }
    }
}

#[test]
fn moments() {
    let d = q("5");
    assert_eq!(haar_moment(&[1, 1], &[1, 1], &d).unwrap(), q("1/5"));
    assert_eq!(haar_moment(&[1, 2], &[1, 2], &d).unwrap(), q("0"));
    assert_eq!(haar_moment(&[1, 2], &[3, 3], &d).unwrap(), q("0"));
    assert_eq!(
        haar_moment(&[1, 1, 1, 1], &[1, 1, 1, 1], &d).unwrap(),
        q("2/30")
    );
    assert_eq!(haar_moment(&[1], &[1], &d).unwrap(), q("0"));
    assert_eq!(haar_moment(&[], &[], &d).unwrap(), q("1"));
    assert!(haar_moment(&[0, 1], &[1, 1], &d).is_err());
    assert!(haar_moment(&[1, 1], &[1], &d).is_err());
    // u_11 u_12 u_21 u_22: only the nesting pairing fits both kernels.
    let w = weingarten_exact(2, Mode::Numeric(d.clone())).unwrap();
    let (p, n) = (pr("{1,2}{3,4}"), pr("{1,4}{2,3}"));
    assert_eq!(
        haar_moment(&[1, 1, 2, 2], &[1, 2, 2, 1], &d).unwrap(),
        w.value(&p, &n).unwrap().clone()
    );
}

#[test]
fn json_shape() {
    let w = weingarten_exact(1, Mode::Numeric(q("3"))).unwrap();
    let text = serde_json::to_string(&w.to_json()).unwrap();
    assert_eq!(
        text,
        r#"{"k":1,"mode":"numeric","d":"3","ordering":["{1,2}"],"entries":[["1/3"]]}"#
    );
    let w = weingarten_exact(1, Mode::Symbolic).unwrap();
    let text = serde_json::to_string(&w.to_json()).unwrap();
    assert!(text.contains(r#""mode":"symbolic""#));
}

#[test]
fn one_by_one() {
    let w = weingarten_exact(1, Mode::Symbolic).unwrap();
    assert_eq!(
        w.entry(&pr("{1,2}"), &pr("{1,2}")).unwrap(),
        &RationalFunction::d_pow(-1)
    );
}

#[test]
fn moment_examples() {
    assert_eq!(haar_moment(&[1, 1], &[5, 5], &q("4")).unwrap(), q("1/4"));
    assert_eq!(
        haar_moment(&[1, 2, 1], &[1, 1, 2], &q("4")).unwrap(),
        q("0")
    );
    let row: BigRational = (1..=3)
        .map(|j| haar_moment(&[1, 1], &[j, j], &q("3")).unwrap())
        .sum();
    assert_eq!(row, q("1"));
}

#[test]
fn generic_moments_are_weingarten_entries() {
    let d = q("5");
    for k in 1..=3 {
        let w = weingarten_exact(k, Mode::Numeric(d.clone())).unwrap();
        for p in all(k) {
            for r in all(k) {
                // ker j = p and ker i = r, each refined by a single pairing
                let m = haar_moment(&index_with_kernel(r), &index_with_kernel(p), &d).unwrap();
                assert_eq!(&m, w.value(p, r).unwrap(), "{p} {r}");
            }
        }
    }
}

#[test]
fn leading_coefficients_have_the_predicted_sign() {
    for k in 1..=4 {
        let w = weingarten_exact(k, Mode::Symbolic).unwrap();
        for p in all(k) {
            for r in all(k) {
                let s = expand_at_infinity(w.entry(p, r).unwrap(), 0);
                let lead = &s.coeffs[0];
                let even = (k + join_block_count(p, r).unwrap()).is_multiple_of(2);
                assert!(!lead.is_zero());
                assert_eq!(lead > &BigRational::zero(), even, "{p} {r}");
            }
        }
    }
}
