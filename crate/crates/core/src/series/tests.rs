use super::*;
use crate::numeric::{int, rat, QuadRational};
use proptest::prelude::*;

fn q(terms: &[(i64, i64)], grain: u32, trunc: i64) -> QExp {
    QExp::from_terms(grain, trunc, terms.iter().map(|&(k, c)| (k, int(c))))
}

#[test]
fn difference_of_squares() {
    let a = q(&[(0, 1), (1, 1)], 1, 3);
    let b = q(&[(0, 1), (1, -1)], 1, 3);
    assert_eq!(&a * &b, q(&[(0, 1), (2, -1)], 1, 3));
}

#[test]
fn division_examples() {
    let num = q(&[(0, 1), (2, -1)], 1, 6);
    let den = q(&[(0, 1), (1, -1)], 1, 6);
    let r = num.divide(&den).unwrap();
    assert_eq!(r, q(&[(0, 1), (1, 1)], 1, 6));

    let one = QExp::one(1, 4);
    let geo = one.divide(&q(&[(0, 1), (1, -1)], 1, 4)).unwrap();
    assert_eq!(geo, q(&[(0, 1), (1, 1), (2, 1), (3, 1)], 1, 4));

    assert_eq!(one.divide(&QExp::zero(1, 4)), Err(SeriesError::ZeroDivisor));
}

#[test]
fn division_window_shrinks_by_leading_exponent() {
    // q^2 (1 + q) / q = q (1 + q), trusted to 10 - 1
    let num = q(&[(2, 1), (3, 1)], 1, 10);
    let den = q(&[(1, 1)], 1, 10);
    let r = num.divide(&den).unwrap();
    assert_eq!(r.trunc(), 9);
    assert_eq!(r, q(&[(1, 1), (2, 1)], 1, 9));
}

#[test]
fn bivariate_division_needs_a_componentwise_minimum() {
    let den = BiExp::from_terms([1, 1], [4, 4], [([1, 0], int(1)), ([0, 1], int(1))]);
    let num = BiExp::one([1, 1], [4, 4]);
    assert_eq!(num.divide(&den), Err(SeriesError::AmbiguousLeadingTerm));

    let a = BiExp::from_terms([1, 1], [5, 5], [([0, 0], int(1)), ([1, 0], int(2)), ([1, 2], int(-3))]);
    let b = BiExp::from_terms([1, 1], [5, 5], [([0, 0], int(1)), ([0, 1], int(1)), ([2, 1], rat(1, 2))]);
    let back = (&a * &b).divide(&b).unwrap();
    assert!(back.agrees_with(&a).unwrap());
}

#[test]
fn truncation_is_a_contract() {
    let a = q(&[(0, 1)], 1, 3);
    assert_eq!(a.coeff(2).unwrap(), int(0));
    assert!(matches!(a.coeff(3), Err(SeriesError::BeyondTruncation(_))));
}

#[test]
fn substitutions() {
    let half = q(&[(1, 1)], 2, 4); // q^{1/2}
    let quarter = half.scale_down(2);
    assert_eq!(quarter.grain(), 4);
    assert_eq!(quarter.terms().next(), Some((&1, &int(1))));
    assert_eq!(half.scale_up(1), half);
    let doubled = q(&[(0, 1), (1, -24)], 1, 3).scale_up(2);
    assert_eq!(doubled.coeff(2).unwrap(), int(-24));
    assert_eq!(doubled.coeff(1).unwrap(), int(0));
    assert_eq!(doubled.trunc(), 6);
}

#[test]
fn phase_twist() {
    let integral = q(&[(0, 1), (1, 5)], 1, 3);
    assert_eq!(integral.phase_twist_t().unwrap(), integral);
    let half = q(&[(0, 1), (1, 5), (2, 7)], 2, 4);
    assert_eq!(half.phase_twist_t().unwrap(), q(&[(0, 1), (1, -5), (2, 7)], 2, 4));
    assert_eq!(q(&[], 3, 3).phase_twist_t(), Err(SeriesError::GrainTooFine(3)));
}

#[test]
fn mixed_grains_are_joined() {
    let a = q(&[(0, 1), (1, 1)], 1, 3);
    let b = q(&[(1, 1)], 2, 6);
    let s = &a + &b;
    assert_eq!(s.grain(), 2);
    assert_eq!(s, q(&[(0, 1), (1, 1), (2, 1)], 2, 6));
}

#[test]
fn quadratic_discriminants_do_not_mix() {
    let a = QuadPairExp::one(QuadGrain { den: 4, disc: 2 }, 8);
    let b = QuadPairExp::one(QuadGrain { den: 10, disc: 5 }, 8);
    assert_eq!(a.try_add(&b), Err(SeriesError::GrainMismatch));
}

#[test]
fn json_round_trips() {
    let a = q(&[(0, 1), (1, -3), (5, 2)], 2, 7);
    let v = a.to_json();
    assert_eq!(v["trunc"], "7/2");
    assert_eq!(v["coeffs"][1][0], "1/2");
    assert_eq!(QExp::from_json(&v).unwrap(), a);

    let b = BiExp::from_terms([2, 2], [6, 4], [([1, 1], rat(2, 3)), ([3, 1], int(-24))]);
    assert_eq!(BiExp::from_json(&b.to_json()).unwrap(), b);

    let g = QuadGrain { den: 4, disc: 2 };
    let xi: QuadRational = "1/2+1/4*sqrt(2)".parse().unwrap();
    let c = QuadPairExp::from_terms(g, 8, [(QuadKey::from_value(&xi, g).unwrap(), int(-1))]);
    let v = c.to_json();
    assert_eq!(v["coeffs"][0][0], "1/2+1/4*sqrt(2)");
    assert_eq!(v["disc"], 2);
    let back = QuadPairExp::from_json(&v).unwrap();
    assert_eq!(back, c);
    assert_eq!(back.coeff_at(&xi).unwrap(), int(-1));
}

#[test]
fn json_rejects_terms_beyond_truncation() {
    let v = serde_json::json!({"grain": 1, "trunc": "2", "coeffs": [["3", "1"]]});
    assert!(QExp::from_json(&v).is_err());
}

#[test]
fn slices_and_diagonal() {
    let f = q(&[(0, 1), (1, 2)], 1, 3);
    let g = q(&[(0, 3), (2, 1)], 1, 3);
    let fg = BiExp::tensor(&f, &g);
    assert_eq!(fg.slice(0, 0).unwrap(), g);
    assert_eq!(fg.slice(1, 0).unwrap(), f.scale(&int(3)));
    assert_eq!(fg.swap().slice(1, 0).unwrap(), g);
    assert_eq!(fg.diagonal().unwrap(), &f * &g);
}

fn arb_qexp() -> impl Strategy<Value = QExp> {
    (proptest::collection::vec((0i64..12, -20i64..20, 1i64..5), 0..8), 6i64..12)
        .prop_map(|(terms, t)| QExp::from_terms(2, t, terms.into_iter().map(|(k, n, d)| (k, rat(n, d)))))
}

fn arb_biexp() -> impl Strategy<Value = BiExp> {
    proptest::collection::vec((0i64..5, 0i64..5, -9i64..9), 0..7)
        .prop_map(|terms| BiExp::from_terms([2, 2], [5, 5], terms.into_iter().map(|(a, b, c)| ([a, b], int(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distributive(x in arb_qexp(), y in arb_qexp(), z in arb_qexp()) {
        let lhs = &(&x + &y) * &z;
        let rhs = &(&x * &z) + &(&y * &z);
        prop_assert!(lhs.agrees_with(&rhs).unwrap());
    }

    #[test]
    fn bivariate_products_commute(x in arb_biexp(), y in arb_biexp()) {
        prop_assert_eq!(&x * &y, &y * &x);
    }

    #[test]
    fn truncation_monotone(x in arb_qexp(), y in arb_qexp(), t in 1i64..6) {
        let small = &x.truncate(t) * &y.truncate(t);
        prop_assert!(small.agrees_with(&(&x * &y).truncate(t)).unwrap());
        prop_assert!(small.trunc() >= t);
    }

    #[test]
    fn divide_undoes_multiply(x in arb_qexp(), lead in 1i64..5, tail in proptest::collection::vec((1i64..6, -5i64..5), 0..4)) {
        let den = QExp::from_terms(2, 14, std::iter::once((0, int(lead))).chain(tail.into_iter().map(|(k, c)| (k, int(c)))));
        let back = (&x * &den).divide(&den).unwrap();
        prop_assert!(back.agrees_with(&x).unwrap());
    }
}
