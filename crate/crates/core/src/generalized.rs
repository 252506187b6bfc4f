//! Generalized Stirling numbers `S(n,k)_{α,β,γ}` and the degenerate
//! Stirling numbers `S(n,k)_λ = S(n,k)_{λ,1,0}`.

use num_traits::{One, Zero};

use crate::egf::{degenerate_exp, TruncatedSeries};
use crate::error::{Error, Result};
use crate::exact_arith::{binomial_q, factorial_q, falling_factorial_deg, int, pow_q, Rational};
use crate::family::FamilySpec;
use crate::memo::egf_value;

fn check_triple(alpha: &Rational, beta: &Rational, gamma: &Rational) -> Result<()> {
    if alpha.is_zero() && beta.is_zero() && gamma.is_zero() {
        Err(Error::ZeroParameters)
    } else {
        Ok(())
    }
}

/// `(e^β_α(t) - 1)^k / (β^k k!) · e^γ_α(t)`; undefined for `β = 0`.
pub fn generalized_egf(
    k: usize,
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    order: usize,
) -> Result<TruncatedSeries> {
    if beta.is_zero() {
        return Err(Error::ZeroBeta("the generalized generating function"));
    }
    let block = degenerate_exp(beta, alpha, order).try_sub(&TruncatedSeries::one(order))?;
    let norm = Rational::one() / (pow_q(beta, k) * factorial_q(k));
    block.pow(k).scale(&norm).try_mul(&degenerate_exp(gamma, alpha, order))
}

/// Hsu–Shiue generalized Stirling number. The generating function is used
/// for `β ≠ 0`, the recurrence otherwise.
pub fn gen_stirling(n: usize, k: usize, alpha: &Rational, beta: &Rational, gamma: &Rational) -> Result<Rational> {
    check_triple(alpha, beta, gamma)?;
    if beta.is_zero() {
        return gen_stirling_by_recurrence(n, k, alpha, beta, gamma);
    }
    let spec = FamilySpec::Generalized {
        alpha: alpha.clone(),
        beta: beta.clone(),
        gamma: gamma.clone(),
    };
    egf_value(&spec, n, k, |order| generalized_egf(k, alpha, beta, gamma, order))
}

/// Table of `S(m,j)_{α,β,γ}` for `m <= n`, `j <= k` from
/// `S(m+1,j) = S(m,j-1) + (jβ - mα + γ) S(m,j)`.
pub(crate) fn gen_table(n: usize, k: usize, alpha: &Rational, beta: &Rational, gamma: &Rational) -> Vec<Vec<Rational>> {
    let mut rows = Vec::with_capacity(n + 1);
    let mut row = vec![Rational::zero(); k + 1];
    row[0] = Rational::one();
    rows.push(row);
    for m in 0..n {
        let prev = &rows[m];
        let next = (0..=k)
            .map(|j| {
                let mut v = (int(j as i64) * beta - int(m as i64) * alpha + gamma) * &prev[j];
                if j > 0 {
                    v += &prev[j - 1];
                }
                v
            })
            .collect();
        rows.push(next);
    }
    rows
}

pub fn gen_stirling_by_recurrence(
    n: usize,
    k: usize,
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
) -> Result<Rational> {
    check_triple(alpha, beta, gamma)?;
    Ok(gen_table(n, k, alpha, beta, gamma)[n][k].clone())
}

/// `1/(β^k k!) sum_{j=0}^{k} (-1)^{k-j} C(k,j) (βj + γ)_{n,α}`.
pub fn gen_stirling_explicit(n: usize, k: usize, alpha: &Rational, beta: &Rational, gamma: &Rational) -> Result<Rational> {
    if beta.is_zero() {
        return Err(Error::ZeroBeta("the explicit sum"));
    }
    let mut acc = Rational::zero();
    for j in 0..=k {
        let term = binomial_q(k, j as i64) * falling_factorial_deg(&(beta * int(j as i64) + gamma), n, alpha);
        if (k - j) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc / (pow_q(beta, k) * factorial_q(k)))
}

/// One step of the generalized recurrence evaluated from canonical values:
/// the right-hand side for `S(n+1,k)`.
pub fn hsu_shiue_step(n_plus_1: usize, k: usize, alpha: &Rational, beta: &Rational, gamma: &Rational) -> Result<Rational> {
    let n = n_plus_1
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidArgument("the recurrence needs n + 1 >= 1".into()))?;
    let coeff = int(k as i64) * beta - int(n as i64) * alpha + gamma;
    let mut v = coeff * gen_stirling(n, k, alpha, beta, gamma)?;
    if k > 0 {
        v += gen_stirling(n, k - 1, alpha, beta, gamma)?;
    }
    Ok(v)
}

/// `(e_λ(t) - 1)^k / k!`.
pub fn degenerate_egf(k: usize, lambda: &Rational, order: usize) -> TruncatedSeries {
    let block = degenerate_exp(&Rational::one(), lambda, order)
        .try_sub(&TruncatedSeries::one(order))
        .expect("equal orders");
    block.pow(k).scale(&(Rational::one() / factorial_q(k)))
}

/// Degenerate Stirling number `S(n,k)_λ`; `λ = 0` gives the classic numbers.
pub fn degenerate_stirling(n: usize, k: usize, lambda: &Rational) -> Rational {
    let spec = FamilySpec::Degenerate { lambda: lambda.clone() };
    egf_value(&spec, n, k, |order| Ok(degenerate_egf(k, lambda, order))).expect("series covers every index")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{from_biguint, ratio};
    use crate::oracle::{oracle_sum, WeightScheme};
    use crate::stirling_core::stirling2;
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        int(v)
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-12i64..12, 1i64..6)
            .prop_filter("non-zero", |(p, _)| *p != 0)
            .prop_map(|(p, d)| ratio(p, d))
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-12i64..12, 1i64..6).prop_map(|(p, d)| ratio(p, d))
    }

    #[test]
    fn examples() {
        let (a, b, g) = (q(0), q(1), q(1));
        assert_eq!(gen_stirling(2, 1, &a, &b, &g).unwrap(), q(3));
        assert_eq!(gen_stirling_explicit(2, 1, &a, &b, &g).unwrap(), q(3));
        assert_eq!(gen_stirling(2, 3, &q(2), &q(5), &q(1)).unwrap(), q(0));
        assert_eq!(gen_stirling(3, 0, &q(1), &q(2), &q(3)).unwrap(), q(6));
        for n in 0..=10 {
            for k in 0..=n {
                assert_eq!(gen_stirling(n, k, &q(0), &q(1), &q(0)).unwrap(), from_biguint(&stirling2(n, k)));
            }
        }
        assert_eq!(
            gen_stirling_explicit(3, 2, &q(1), &q(2), &q(0)).unwrap(),
            gen_stirling(3, 2, &q(1), &q(2), &q(0)).unwrap()
        );
        // S(3,2)_{1,2,0}: partitions of {1,2,3} into two blocks, weight (1)_{1,1} = 1 on the pair
        assert_eq!(gen_stirling(3, 2, &q(1), &q(2), &q(0)).unwrap(), q(3));
    }

    #[test]
    fn error_paths() {
        let z = q(0);
        assert_eq!(gen_stirling(3, 1, &z, &z, &z), Err(Error::ZeroParameters));
        assert_eq!(gen_stirling_by_recurrence(3, 1, &z, &z, &z), Err(Error::ZeroParameters));
        assert!(matches!(gen_stirling_explicit(3, 1, &q(1), &z, &q(2)), Err(Error::ZeroBeta(_))));
        assert!(matches!(generalized_egf(1, &q(1), &z, &q(2), 4), Err(Error::ZeroBeta(_))));
        // β = 0 falls back to the recurrence
        let v = gen_stirling(4, 2, &q(1), &z, &q(2)).unwrap();
        let o = oracle_sum(4, 2, &WeightScheme::generalized(q(1), z.clone(), q(2))).unwrap();
        assert_eq!(v, o);
    }

    #[test]
    fn degenerate_examples() {
        for n in 0..=9 {
            for k in 0..=n {
                let expect = if n == k { q(1) } else { q(0) };
                assert_eq!(degenerate_stirling(n, k, &q(1)), expect);
                assert_eq!(degenerate_stirling(n, k, &q(0)), from_biguint(&stirling2(n, k)));
            }
        }
        let half = ratio(1, 2);
        let v = degenerate_stirling(3, 2, &half);
        assert_eq!(v, gen_stirling_by_recurrence(3, 2, &half, &q(1), &q(0)).unwrap());
        // 3 (1 - 1/2) from the three partitions with one pair
        assert_eq!(v, ratio(3, 2));
    }

    #[test]
    fn degenerate_falling_factorial_expansion() {
        // (t)_{n,λ} = sum_k S(n,k)_λ (t)_k
        let lambda = ratio(-2, 3);
        for n in 0..=8 {
            for t in [ratio(7, 2), q(-3), ratio(1, 5)] {
                let rhs: Rational = (0..=n)
                    .map(|k| degenerate_stirling(n, k, &lambda) * falling_factorial_deg(&t, k, &q(1)))
                    .sum();
                assert_eq!(falling_factorial_deg(&t, n, &lambda), rhs);
            }
        }
    }

    #[test]
    fn oracle_integrality() {
        for (a, b, g) in [(1, 2, 0), (1, 3, 2), (2, 4, 2), (0, 1, 2), (3, 6, 9)] {
            let (a, b, g) = (q(a), q(b), q(g));
            for n in 0..=8 {
                for k in 0..=n {
                    let v = gen_stirling(n, k, &a, &b, &g).unwrap();
                    assert!(v.is_integer() && v >= q(0));
                    assert_eq!(v, oracle_sum(n, k, &WeightScheme::generalized(a.clone(), b.clone(), g.clone())).unwrap());
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn three_routes_agree(a in rational(), b in nonzero_rational(), g in rational(), n in 0usize..12) {
            for k in 0..=n {
                let egf = gen_stirling(n, k, &a, &b, &g).unwrap();
                prop_assert_eq!(&egf, &gen_stirling_by_recurrence(n, k, &a, &b, &g).unwrap());
                prop_assert_eq!(&egf, &gen_stirling_explicit(n, k, &a, &b, &g).unwrap());
            }
        }

        #[test]
        fn connection_coefficients(a in rational(), b in nonzero_rational(), g in rational(), t in rational(), n in 0usize..9) {
            // (t)_{n,α} = sum_k S(n,k)_{α,β,γ} (t - γ)_{k,β}
            let rhs: Rational = (0..=n)
                .map(|k| gen_stirling(n, k, &a, &b, &g).unwrap() * falling_factorial_deg(&(&t - &g), k, &b))
                .sum();
            prop_assert_eq!(falling_factorial_deg(&t, n, &a), rhs);
        }

        #[test]
        fn scaling(a in rational(), b in nonzero_rational(), g in rational(), c in nonzero_rational(), n in 0usize..10) {
            for k in 0..=n {
                let scaled = gen_stirling(n, k, &(&c * &a), &(&c * &b), &(&c * &g)).unwrap();
                prop_assert_eq!(scaled, pow_q(&c, n - k) * gen_stirling(n, k, &a, &b, &g).unwrap());
            }
        }
    }
}
