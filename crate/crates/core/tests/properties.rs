mod common;

use diffdim::numpoly::NumericalPolynomial;
use diffdim::oracle::interpolate_numerical;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn setdim_matches_enumeration() {
    common::suite_a(11).unwrap();
}

#[test]
fn empty_sets_zero_tests_and_caps() {
    common::suite_b(12).unwrap();
}

#[test]
fn reductions_are_sound() {
    common::suite_c(13).unwrap();
}

#[test]
fn routes_agree() {
    common::suite_d(14).unwrap();
}

fn small_poly() -> impl Strategy<Value = NumericalPolynomial> {
    proptest::collection::btree_map((0u32..=2, 0u32..=1), -20i64..=20, 0..6).prop_map(|m| {
        NumericalPolynomial::from_terms(
            2,
            m.into_iter()
                .map(|((a, b), c)| (vec![a, b], BigRational::new(BigInt::from(c), BigInt::from(6)))),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn listing_round_trips(p in small_poly()) {
        let back = NumericalPolynomial::parse_canonical_listing(2, &p.canonical_listing()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn interpolation_inverts_evaluation(p in small_poly(), x in 0i64..4, y in 0i64..4) {
        let scaled = p.scale(&BigRational::from_integer(BigInt::from(2)));
        // 2p has denominators dividing 3; make it integer valued first.
        let q = scaled.scale(&BigRational::from_integer(BigInt::from(3)));
        let mut f = |r: &[i64]| Ok(q.evaluate(r).to_integer());
        let back = interpolate_numerical(&mut f, &[2, 1], &[x, y]).unwrap();
        prop_assert_eq!(back, q);
    }
}
