use proptest::prelude::*;

use stirling_kit::exact_arith::{binomial_q, falling_factorial_deg, from_biguint, int, pow_q, ratio};
use stirling_kit::generalized::gen_stirling;
use stirling_kit::incomplete_generalized::associated_from_free;
use stirling_kit::oracle::oracle_sum;
use stirling_kit::partial_degenerate::partial_deg;
use stirling_kit::stirling_core::{stirling2, stirling2_associated};
use stirling_kit::{FamilySpec, Method, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| *q != int(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generalized_methods_agree(a in rational(), b in nonzero(), g in rational(), n in 0usize..10) {
        let spec = FamilySpec::Generalized { alpha: a, beta: b, gamma: g };
        for k in 0..=n {
            let v = spec.value(n, k).unwrap();
            for m in [Method::Recurrence, Method::Explicit] {
                prop_assert_eq!(&v, &spec.value_by(n, k, m).unwrap());
            }
        }
    }

    #[test]
    fn generalized_special_values(a in rational(), b in nonzero(), g in rational(), n in 1usize..12) {
        prop_assert_eq!(gen_stirling(n, 0, &a, &b, &g).unwrap(), falling_factorial_deg(&g, n, &a));
        prop_assert_eq!(gen_stirling(n, n, &a, &b, &g).unwrap(), int(1));
        let pairs = int(n as i64) * &g + binomial_q(n, 2) * (&b - &a);
        prop_assert_eq!(gen_stirling(n, n - 1, &a, &b, &g).unwrap(), pairs);
    }

    #[test]
    fn scaling_is_homogeneous(a in rational(), b in nonzero(), g in rational(), c in nonzero(), n in 0usize..9) {
        for k in 0..=n {
            let scaled = gen_stirling(n, k, &(&c * &a), &(&c * &b), &(&c * &g)).unwrap();
            prop_assert_eq!(scaled, pow_q(&c, n - k) * gen_stirling(n, k, &a, &b, &g).unwrap());
        }
    }

    #[test]
    fn associated_numbers_are_free_of_gamma(g in rational(), ell in 1usize..4, n in 0usize..9) {
        for k in 0..=n {
            let expect = from_biguint(&stirling2_associated(n, k, ell));
            prop_assert_eq!(associated_from_free(n, k, &g, ell).unwrap(), expect);
        }
    }

    #[test]
    fn partial_matches_oracle(g in rational(), a in rational(), b in nonzero(), ell in 0usize..4, n in 0usize..7) {
        let spec = FamilySpec::PartialDegenerate { gamma: g.clone(), alpha: a.clone(), beta: b.clone(), ell };
        let scheme = spec.weight_scheme();
        for k in 0..=n {
            let v = partial_deg(n, k, ell, &g, &a, &b).unwrap();
            prop_assert_eq!(&v, &oracle_sum(n, k, &scheme).unwrap());
            prop_assert_eq!(&v, &spec.value_by(n, k, Method::Recurrence).unwrap());
        }
    }
}

#[test]
fn classic_triangle_row_sums_are_bell_numbers() {
    let bell = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
    for (n, &b) in bell.iter().enumerate() {
        let sum: num_bigint::BigUint = (0..=n).map(|k| stirling2(n, k)).sum();
        assert_eq!(sum, b.into(), "row {n}");
    }
}

#[test]
fn generalized_reduces_to_classic() {
    for n in 0..=10 {
        for k in 0..=n {
            let v = gen_stirling(n, k, &int(0), &int(1), &int(0)).unwrap();
            assert_eq!(v, from_biguint(&stirling2(n, k)));
        }
    }
}
