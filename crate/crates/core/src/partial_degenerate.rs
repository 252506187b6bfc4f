//! Partial degenerate numbers `S^{γ,α,β}_{n,k,ℓ}`: a special set weighted
//! `γ^{|G|}` plus `k` blocks, where blocks of size at most `ℓ` carry the
//! degenerate weight `(β-α)_{|B|-1,α}` and larger blocks carry weight 1.
//!
//! Besides the generating function this module evaluates the number as a
//! binomial convolution of free-cell and restricted numbers, through two
//! recurrences and as a sum over compositions. It also provides the
//! colored-singleton numbers `S^{(r,s)}_{n,k}`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::egf::{exp_series, incomplete_exp, TruncatedSeries};
use crate::error::{Error, Result};
use crate::exact_arith::{
    binomial_q, factorial_q, falling_factorial_deg, from_biguint, int, multinomial, pow_q, to_natural, Rational,
};
use crate::family::{FamilySpec, Form};
use crate::incomplete_generalized::{free_atleast, gen_restricted};
use crate::memo::egf_value;

fn check_beta(beta: &Rational) -> Result<()> {
    if beta.is_zero() {
        Err(Error::ZeroBeta("partial degenerate numbers"))
    } else {
        Ok(())
    }
}

/// `sum_{i=1}^{ℓ} (β)_{i,α}/β x^i/i!`: the degenerate part of a block.
fn degenerate_part(ell: usize, alpha: &Rational, beta: &Rational, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |i| {
        if (1..=ell).contains(&i) {
            falling_factorial_deg(beta, i, alpha) / beta / factorial_q(i)
        } else {
            Rational::zero()
        }
    })
}

/// Block series `e^x + sum_{i=1}^{ℓ} (β)_{i,α}/β x^i/i! - e_{<=ℓ}(x)`.
pub fn partial_deg_block_series(ell: usize, alpha: &Rational, beta: &Rational, order: usize) -> Result<TruncatedSeries> {
    check_beta(beta)?;
    exp_series(&int(1), order)
        .try_add(&degenerate_part(ell, alpha, beta, order))?
        .try_sub(&incomplete_exp(ell, false, order))
}

/// `e^{γx}/k! · (block series)^k`.
pub fn partial_deg_egf(
    k: usize,
    ell: usize,
    gamma: &Rational,
    alpha: &Rational,
    beta: &Rational,
    order: usize,
) -> Result<TruncatedSeries> {
    let block = partial_deg_block_series(ell, alpha, beta, order)?;
    block
        .pow(k)
        .scale(&(Rational::one() / factorial_q(k)))
        .try_mul(&exp_series(gamma, order))
}

/// The binomial-theorem expansion of the generating function:
/// `e^{γx}/k! sum_j C(k,j) (e^x - e_{<=ℓ})^j (degenerate part)^{k-j}`.
pub fn partial_deg_binomial_expansion(
    k: usize,
    ell: usize,
    gamma: &Rational,
    alpha: &Rational,
    beta: &Rational,
    order: usize,
) -> Result<TruncatedSeries> {
    check_beta(beta)?;
    let free = exp_series(&int(1), order).try_sub(&incomplete_exp(ell, false, order))?;
    let deg = degenerate_part(ell, alpha, beta, order);
    let mut acc = TruncatedSeries::zero(order);
    for j in 0..=k {
        let term = free.pow(j).try_mul(&deg.pow(k - j))?.scale(&binomial_q(k, j as i64));
        acc = acc.try_add(&term)?;
    }
    acc.scale(&(Rational::one() / factorial_q(k)))
        .try_mul(&exp_series(gamma, order))
}

/// `S^{γ,α,β}_{n,k,ℓ}` from its generating function.
pub fn partial_deg(
    n: usize,
    k: usize,
    ell: usize,
    gamma: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> Result<Rational> {
    check_beta(beta)?;
    let spec = FamilySpec::PartialDegenerate {
        gamma: gamma.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        ell,
    };
    egf_value(&spec, n, k, |order| partial_deg_egf(k, ell, gamma, alpha, beta, order))
}

/// `sum_i sum_j C(n,i) S^{>ℓ}_γ(i,j) S(n-i,k-j)^{<=ℓ}_{α,β}`.
pub fn partial_deg_convolution(
    n: usize,
    k: usize,
    ell: usize,
    gamma: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> Result<Rational> {
    check_beta(beta)?;
    let zero = Rational::zero();
    let mut acc = Rational::zero();
    for i in 0..=n {
        for j in 0..=k.min(i) {
            let free = free_atleast(i, j, gamma, ell);
            if free.is_zero() {
                continue;
            }
            acc += binomial_q(n, i as i64) * free * gen_restricted(n - i, k - j, alpha, beta, &zero, ell)?;
        }
    }
    Ok(acc)
}

/// Right-hand side of the recurrence splitting on the cell of `n+1`:
/// `sum_i sum_j C(n,i) [S^{>ℓ}(i+1,j) S^{<=ℓ}(n-i,k-j) + S^{>ℓ}(i,j) S^{<=ℓ}(n-i+1,k-j)]`.
pub fn partial_deg_recursion(
    n_plus_1: usize,
    k: usize,
    ell: usize,
    gamma: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> Result<Rational> {
    check_beta(beta)?;
    let n = n_plus_1
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidArgument("the recurrence needs n + 1 >= 1".into()))?;
    let zero = Rational::zero();
    let mut acc = Rational::zero();
    for i in 0..=n {
        let c = binomial_q(n, i as i64);
        for j in 0..=k {
            let in_free = free_atleast(i + 1, j, gamma, ell) * gen_restricted(n - i, k - j, alpha, beta, &zero, ell)?;
            let in_deg = free_atleast(i, j, gamma, ell) * gen_restricted(n - i + 1, k - j, alpha, beta, &zero, ell)?;
            acc += &c * (in_free + in_deg);
        }
    }
    Ok(acc)
}

/// Calls `visit` with every composition `r_1 + ... + r_k + r_{k+1} = n` where
/// `r_1..r_k >= min_part` and `r_{k+1} >= 0`.
fn for_each_composition(n: usize, k: usize, min_part: usize, visit: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
    fn rec(
        left: usize,
        slot: usize,
        k: usize,
        min_part: usize,
        parts: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if slot == k {
            parts.push(left);
            let r = visit(parts);
            parts.pop();
            return r;
        }
        let remaining = k - slot - 1;
        let mut r = min_part;
        while r + remaining * min_part <= left {
            parts.push(r);
            rec(left - r, slot + 1, k, min_part, parts, visit)?;
            parts.pop();
            r += 1;
        }
        Ok(())
    }
    rec(n, 0, k, min_part, &mut Vec::with_capacity(k + 1), visit)
}

/// Sum over compositions of `n` into `k` block sizes and one special-set size.
///
/// `Form::Corrected` weights each composition by `Π S^{0,α,β}_{r_i,1,ℓ}` and
/// divides by `k!` for the unordered blocks. `Form::Literal` uses the printed
/// lower bound `r_i >= ℓ`, the product `Π_{i=1}^{k} S^{0,α,β}_{i,1,ℓ}` and no
/// symmetry factor.
pub fn partial_deg_multinomial(
    n: usize,
    k: usize,
    ell: usize,
    gamma: &Rational,
    alpha: &Rational,
    beta: &Rational,
    form: Form,
) -> Result<Rational> {
    check_beta(beta)?;
    let zero = Rational::zero();
    let single = |m: usize| partial_deg(m, 1, ell, &zero, alpha, beta);
    let fixed_product = match form {
        Form::Literal => {
            let mut p = Rational::one();
            for i in 1..=k {
                p *= single(i)?;
            }
            Some(p)
        }
        Form::Corrected => None,
    };
    let min_part = match form {
        Form::Literal => ell,
        Form::Corrected => 1,
    };
    let mut acc = Rational::zero();
    for_each_composition(n, k, min_part, &mut |parts| {
        let special = parts[k];
        let weight = match &fixed_product {
            Some(p) => p.clone(),
            None => {
                let mut p = Rational::one();
                for &r in &parts[..k] {
                    p *= single(r)?;
                }
                p
            }
        };
        acc += from_biguint(&multinomial(n, parts)?) * pow_q(gamma, special) * weight;
        Ok(())
    })?;
    Ok(match form {
        Form::Literal => acc,
        Form::Corrected => acc / factorial_q(k),
    })
}

/// Right-hand side of the recurrence obtained by differentiating the
/// generating function, for `S_{n+1,k}`:
/// `γ S_{n,k} + sum_i C(n,i) S_{i,k-1} S^{0}_{n-i+1,1,ℓ}` (corrected) or with
/// `S_{i,k}` in the sum (literal).
pub fn partial_deg_derivative_recursion(
    n_plus_1: usize,
    k: usize,
    ell: usize,
    gamma: &Rational,
    alpha: &Rational,
    beta: &Rational,
    form: Form,
) -> Result<Rational> {
    check_beta(beta)?;
    let n = n_plus_1
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidArgument("the recurrence needs n + 1 >= 1".into()))?;
    if k == 0 {
        return Err(Error::InvalidArgument("the derivative recurrence needs k >= 1".into()));
    }
    let inner_k = match form {
        Form::Literal => k,
        Form::Corrected => k - 1,
    };
    let zero = Rational::zero();
    let mut acc = gamma * partial_deg(n, k, ell, gamma, alpha, beta)?;
    for i in 0..=n {
        acc += binomial_q(n, i as i64)
            * partial_deg(i, inner_k, ell, gamma, alpha, beta)?
            * partial_deg(n - i + 1, 1, ell, &zero, alpha, beta)?;
    }
    Ok(acc)
}

/// Evaluates `S^{γ,α,β}_{n,k,ℓ}` with the corrected derivative recurrence
/// alone, using single-block weights read off the cell definition.
pub fn partial_deg_by_recurrence(
    n: usize,
    k: usize,
    ell: usize,
    gamma: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> Result<Rational> {
    check_beta(beta)?;
    let base = beta - alpha;
    let weight = |size: usize| {
        if size <= ell {
            falling_factorial_deg(&base, size - 1, alpha)
        } else {
            Rational::one()
        }
    };
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
    let mut first = vec![Rational::zero(); k + 1];
    first[0] = Rational::one();
    rows.push(first);
    for m in 0..n {
        let row = (0..=k)
            .map(|j| {
                let mut v = gamma * &rows[m][j];
                if j > 0 {
                    for i in 0..=m {
                        let s = &rows[i][j - 1];
                        if !s.is_zero() {
                            v += binomial_q(m, i as i64) * s * weight(m - i + 1);
                        }
                    }
                }
                v
            })
            .collect();
        rows.push(row);
    }
    Ok(rows[n][k].clone())
}

/// `e^{rx}/k! (e^x + (s-1)x - 1)^k`.
pub fn colored_singleton_egf(k: usize, r: u64, s: u64, order: usize) -> TruncatedSeries {
    let block = exp_series(&int(1), order)
        .try_add(&TruncatedSeries::monomial(int(s as i64 - 1), 1, order))
        .and_then(|b| b.try_sub(&TruncatedSeries::one(order)))
        .expect("equal orders");
    block
        .pow(k)
        .scale(&(Rational::one() / factorial_q(k)))
        .try_mul(&exp_series(&int(r as i64), order))
        .expect("equal orders")
}

/// Colored-singleton Stirling number `S^{(r,s)}_{n,k}`.
pub fn colored_singleton(n: usize, k: usize, r: u64, s: u64) -> BigUint {
    let spec = FamilySpec::ColoredSingleton { r, s };
    let v = egf_value(&spec, n, k, |order| Ok(colored_singleton_egf(k, r, s, order))).expect("series covers every index");
    to_natural(&v).expect("colored-singleton numbers are natural")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::ratio;
    use crate::oracle::{oracle_sum, WeightScheme};
    use crate::stirling_core::stirling2;

    fn q(v: i64) -> Rational {
        int(v)
    }

    /// (α, β, γ)
    fn triples() -> Vec<(Rational, Rational, Rational)> {
        [(0, 1, 0), (0, 1, 2), (1, 2, 0), (1, 3, 2), (2, 4, 2)]
            .iter()
            .map(|&(a, b, g)| (q(a), q(b), q(g)))
            .collect()
    }

    #[test]
    fn examples() {
        let g = ratio(3, 2);
        for n in 0..=6 {
            assert_eq!(partial_deg(n, 0, 2, &g, &q(1), &q(2)).unwrap(), pow_q(&g, n));
        }
        assert_eq!(partial_deg(2, 1, 1, &q(0), &q(1), &q(2)).unwrap(), q(1));
        assert_eq!(partial_deg(2, 2, 2, &q(0), &q(3), &q(5)).unwrap(), q(1));
        assert_eq!(partial_deg_convolution(2, 1, 1, &q(0), &q(1), &q(2)).unwrap(), q(1));
        assert_eq!(partial_deg_convolution(0, 0, 2, &q(4), &q(1), &q(2)).unwrap(), q(1));
        assert_eq!(partial_deg_recursion(3, 1, 1, &q(0), &q(1), &q(2)).unwrap(), q(1));
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(
                    partial_deg(n, k, 0, &g, &q(1), &q(2)).unwrap(),
                    free_atleast(n, k, &g, 0)
                );
            }
        }
        assert!(matches!(partial_deg(2, 1, 1, &q(0), &q(1), &q(0)), Err(Error::ZeroBeta(_))));
        assert!(matches!(partial_deg_convolution(2, 1, 1, &q(0), &q(1), &q(0)), Err(Error::ZeroBeta(_))));
    }

    #[test]
    fn multinomial_forms() {
        let (a, b, g) = (q(1), q(2), q(3));
        assert_eq!(partial_deg_multinomial(2, 2, 1, &g, &a, &b, Form::Corrected).unwrap(), q(1));
        assert_eq!(partial_deg_multinomial(2, 2, 1, &g, &a, &b, Form::Literal).unwrap(), q(2));
        for n in 1..=6 {
            assert_eq!(
                partial_deg_multinomial(n, 1, 2, &q(0), &a, &b, Form::Corrected).unwrap(),
                partial_deg(n, 1, 2, &q(0), &a, &b).unwrap()
            );
        }
    }

    #[test]
    fn derivative_forms() {
        let (a, b) = (q(1), q(2));
        assert_eq!(partial_deg_derivative_recursion(3, 1, 1, &q(0), &a, &b, Form::Corrected).unwrap(), q(1));
        assert_eq!(partial_deg_derivative_recursion(3, 1, 1, &q(0), &a, &b, Form::Literal).unwrap(), q(3));
        assert!(partial_deg_derivative_recursion(3, 0, 1, &q(0), &a, &b, Form::Corrected).is_err());
        // γ = 0, k = 1: only the special-set-empty term of the convolution survives
        for n in 0..=6 {
            assert_eq!(
                partial_deg_derivative_recursion(n + 1, 1, 2, &q(0), &a, &b, Form::Corrected).unwrap(),
                partial_deg(n + 1, 1, 2, &q(0), &a, &b).unwrap()
            );
        }
    }

    #[test]
    fn five_way_agreement() {
        for (a, b, g) in triples() {
            for ell in 0..=3 {
                let scheme = WeightScheme::partial_degenerate(g.clone(), a.clone(), b.clone(), ell);
                for n in 0..=8 {
                    for k in 0..=n {
                        let v = partial_deg(n, k, ell, &g, &a, &b).unwrap();
                        let ctx = format!("n={n} k={k} ell={ell} (α,β,γ)=({a},{b},{g})");
                        assert!(v.is_integer() && v >= q(0), "{ctx}");
                        assert_eq!(v, partial_deg_convolution(n, k, ell, &g, &a, &b).unwrap(), "{ctx}");
                        assert_eq!(v, partial_deg_multinomial(n, k, ell, &g, &a, &b, Form::Corrected).unwrap(), "{ctx}");
                        assert_eq!(v, partial_deg_by_recurrence(n, k, ell, &g, &a, &b).unwrap(), "{ctx}");
                        assert_eq!(v, oracle_sum(n, k, &scheme).unwrap(), "{ctx}");
                        if n >= 1 {
                            assert_eq!(v, partial_deg_recursion(n, k, ell, &g, &a, &b).unwrap(), "{ctx}");
                            if k >= 1 {
                                let d = partial_deg_derivative_recursion(n, k, ell, &g, &a, &b, Form::Corrected).unwrap();
                                assert_eq!(v, d, "{ctx}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn convolution_with_rational_parameters() {
        let (g, a, b) = (q(2), q(1), q(3));
        let (g2, a2, b2) = (ratio(-1, 3), ratio(5, 2), ratio(7, 4));
        for ell in 0..=3 {
            for n in 0..=9 {
                for k in 0..=n {
                    assert_eq!(
                        partial_deg(n, k, ell, &g, &a, &b).unwrap(),
                        partial_deg_convolution(n, k, ell, &g, &a, &b).unwrap()
                    );
                    assert_eq!(
                        partial_deg(n, k, ell, &g2, &a2, &b2).unwrap(),
                        partial_deg_convolution(n, k, ell, &g2, &a2, &b2).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn pure_degenerate_cells_when_ell_is_large() {
        for (a, b, _) in triples() {
            for n in 0..=7 {
                for k in 0..=n {
                    let ell = n.max(1);
                    let expect = gen_restricted(n, k, &a, &b, &q(0), ell).unwrap();
                    assert_eq!(partial_deg(n, k, ell, &q(0), &a, &b).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn binomial_expansion_is_a_series_identity() {
        for (a, b, g) in triples() {
            for ell in 0..=3 {
                for k in 0..=5 {
                    let direct = partial_deg_egf(k, ell, &g, &a, &b, 12).unwrap();
                    let expanded = partial_deg_binomial_expansion(k, ell, &g, &a, &b, 12).unwrap();
                    assert_eq!(direct, expanded);
                }
            }
        }
    }

    #[test]
    fn colored_examples() {
        for n in 0..=9 {
            for k in 0..=n {
                assert_eq!(colored_singleton(n, k, 0, 1), stirling2(n, k));
            }
        }
        assert_eq!(colored_singleton(2, 1, 0, 2), BigUint::from(1u32));
        for s in 0..5u64 {
            assert_eq!(colored_singleton(1, 1, 0, s), BigUint::from(s));
        }
        for (r, s) in [(0, 2), (1, 3), (2, 2)] {
            let scheme = WeightScheme::colored_singleton(r, s);
            for n in 0..=7 {
                for k in 0..=n {
                    assert_eq!(from_biguint(&colored_singleton(n, k, r, s)), oracle_sum(n, k, &scheme).unwrap());
                }
            }
        }
    }
}
