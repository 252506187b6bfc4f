//! Integer partitions with a fixed number of parts, the coefficients
//! `B(n,j)`, the Hsu power expansion of `[t^n] φ(t)^λ / (λ)_n`, and its use
//! on partial degenerate numbers with `γ` scaled by `k`.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::egf::{exp_series, TruncatedSeries};
use crate::error::{Error, Result};
use crate::exact_arith::{factorial_q, falling_factorial, int, pow_q, Rational};
use crate::partial_degenerate::{partial_deg, partial_deg_block_series};

/// A partition `1^{k_1} 2^{k_2} ... n^{k_n}` of `n`; `multiplicities[i-1] = k_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPartitionMultiset {
    pub multiplicities: Vec<usize>,
}

impl IntPartitionMultiset {
    /// `sum i k_i`.
    pub fn total(&self) -> usize {
        self.multiplicities.iter().enumerate().map(|(i, k)| (i + 1) * k).sum()
    }

    /// `sum k_i`.
    pub fn parts(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

impl fmt::Display for IntPartitionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &k) in self.multiplicities.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i + 1, k));
        }
        let text: Vec<String> = parts.iter().rev().map(usize::to_string).collect();
        if text.is_empty() {
            write!(f, "(empty)")
        } else {
            write!(f, "{}", text.join("+"))
        }
    }
}

/// All partitions of `n` into exactly `parts` positive parts.
pub fn integer_partitions(n: usize, parts: usize) -> Vec<IntPartitionMultiset> {
    // parts listed in non-increasing order, each at most `max`
    fn rec(left: usize, slots: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left < slots {
            return;
        }
        let hi = max.min(left - (slots - 1));
        for p in (1..=hi).rev() {
            if p * slots < left {
                break;
            }
            cur.push(p);
            rec(left - p, slots - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(n, parts, n, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|ps| {
            let mut multiplicities = vec![0; n];
            for p in ps {
                multiplicities[p - 1] += 1;
            }
            IntPartitionMultiset { multiplicities }
        })
        .collect()
}

/// Coefficients `a_0, a_1, ...` of a formal power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSequence {
    pub coeffs: Vec<Rational>,
}

impl CoefficientSequence {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        CoefficientSequence { coeffs }
    }

    pub fn from_series(s: &TruncatedSeries) -> Self {
        Self::new(s.coeffs().to_vec())
    }

    pub fn get(&self, i: usize) -> Result<&Rational> {
        self.coeffs.get(i).ok_or(Error::SequenceTooShort {
            len: self.coeffs.len(),
            index: i,
        })
    }
}

/// `B(n,j) = sum over partitions of n into n-j parts of Π a_i^{k_i} / k_i!`.
pub fn partial_bell(n: usize, j: usize, a: &CoefficientSequence) -> Result<Rational> {
    if j > n {
        return Err(Error::InvalidArgument(format!("B(n,j) needs j <= n, got j = {j}, n = {n}")));
    }
    if n > 0 {
        a.get(n)?;
    }
    let mut acc = Rational::zero();
    for p in integer_partitions(n, n - j) {
        let mut term = Rational::one();
        for (i, &k) in p.multiplicities.iter().enumerate() {
            if k > 0 {
                term *= pow_q(&a.coeffs[i + 1], k) / factorial_q(k);
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// `sum_{j=0}^{m} B(n,j) / (λ-n+j)_j`, the truncated Hsu expansion of
/// `[t^n] φ^λ / (λ)_n` for a series with `a_0 = 1`.
pub fn hsu_expansion(a: &CoefficientSequence, n: usize, lambda: &Rational, m: usize) -> Result<Rational> {
    if !a.get(0)?.is_one() {
        return Err(Error::LeadingCoefficient);
    }
    hsu_sum(a, n, lambda, m)
}

fn hsu_sum(a: &CoefficientSequence, n: usize, lambda: &Rational, m: usize) -> Result<Rational> {
    if m > n {
        return Err(Error::InvalidArgument(format!("expansion depth m = {m} exceeds n = {n}")));
    }
    let mut acc = Rational::zero();
    for j in 0..=m {
        let poch = falling_factorial(&(lambda - int(n as i64) + int(j as i64)), j);
        if poch.is_zero() {
            return Err(Error::VanishingPochhammer { j });
        }
        acc += partial_bell(n, j, a)? / poch;
    }
    Ok(acc)
}

/// How the expansion is applied to partial degenerate numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticMode {
    /// Expand `ψ = φ/t`, where `φ(t) = e^{γt} (block series)` and `ψ(0) = 1`;
    /// `n` indexes the coefficient of `ψ^k`.
    Normalized,
    /// The printed statement: coefficients `a_i = k! S^{γ,α,β}_{i,k,ℓ} / i!`
    /// against `S^{γk,α,β}_{n,k,ℓ} / ((k)_n n!)`.
    Literal,
}

impl std::str::FromStr for AsymptoticMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "normalized" => Ok(AsymptoticMode::Normalized),
            "literal" => Ok(AsymptoticMode::Literal),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}` (expected normalized or literal)"))),
        }
    }
}

/// Estimate, exact value and relative error of one expansion. `exact` is
/// `None` where the target divides by zero; `rel_error` is also `None` when
/// the exact value is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticEstimate {
    pub estimate: Rational,
    pub exact: Option<Rational>,
    pub rel_error: Option<Rational>,
}

impl AsymptoticEstimate {
    fn new(estimate: Rational, exact: Option<Rational>) -> Self {
        let rel_error = exact
            .as_ref()
            .filter(|e| !e.is_zero())
            .map(|e| ((&estimate - e) / e).abs());
        AsymptoticEstimate {
            estimate,
            exact,
            rel_error,
        }
    }
}

/// Decimal rendering of a rational, for display next to the exact value.
pub fn decimal(q: &Rational) -> String {
    match q.to_f64() {
        Some(v) if v.is_finite() => format!("{v:.6e}"),
        _ => "nan".to_string(),
    }
}

/// Coefficients of `ψ = e^{γt} (block series) / t` up to `t^order`.
pub fn normalized_psi(
    gamma: &Rational,
    alpha: &Rational,
    beta: &Rational,
    ell: usize,
    order: usize,
) -> Result<CoefficientSequence> {
    let phi = partial_deg_block_series(ell, alpha, beta, order + 1)?.try_mul(&exp_series(gamma, order + 1))?;
    Ok(CoefficientSequence::new(phi.coeffs()[1..].to_vec()))
}

/// Compares the truncated expansion of depth `m` with the exact value.
#[allow(clippy::too_many_arguments)]
pub fn asymptotic_partial(
    n: usize,
    k: usize,
    gamma: &Rational,
    alpha: &Rational,
    beta: &Rational,
    ell: usize,
    m: usize,
    mode: AsymptoticMode,
) -> Result<AsymptoticEstimate> {
    if k == 0 {
        return Err(Error::InvalidArgument("the expansion needs k >= 1".into()));
    }
    let kq = int(k as i64);
    let gk = gamma * &kq;
    match mode {
        AsymptoticMode::Normalized => {
            let psi = normalized_psi(gamma, alpha, beta, ell, n)?;
            let estimate = hsu_expansion(&psi, n, &kq, m)?;
            // [t^n] ψ^k = k! S^{γk}_{n+k,k,ℓ} / (n+k)!
            let coeff = partial_deg(n + k, k, ell, &gk, alpha, beta)? * factorial_q(k) / factorial_q(n + k);
            let poch = falling_factorial(&kq, n);
            Ok(AsymptoticEstimate::new(estimate, Some(coeff / poch)))
        }
        AsymptoticMode::Literal => {
            let kfact = factorial_q(k);
            let mut coeffs = Vec::with_capacity(n + 1);
            for i in 0..=n {
                coeffs.push(&kfact * partial_deg(i, k, ell, gamma, alpha, beta)? / factorial_q(i));
            }
            let estimate = hsu_sum(&CoefficientSequence::new(coeffs), n, &kq, m)?;
            let poch = falling_factorial(&kq, n);
            let exact = if poch.is_zero() {
                None
            } else {
                Some(partial_deg(n, k, ell, &gk, alpha, beta)? / (poch * factorial_q(n)))
            };
            Ok(AsymptoticEstimate::new(estimate, exact))
        }
    }
}

/// The displayed closed forms of `B(n,0)`, ..., `B(n,3)`; terms that would
/// need a negative factorial are absent.
pub fn bell_closed_form(n: usize, j: usize, a: &CoefficientSequence) -> Result<Rational> {
    a.get(n.max(1))?;
    let a_ = |i: usize| a.coeffs[i].clone();
    // a_1^{n-d} / (n-d)! · rest, or 0 when n < d
    let term = |d: usize, rest: Rational, extra: usize| -> Rational {
        if n < d {
            Rational::zero()
        } else {
            pow_q(&a_(1), n - d) * rest / (factorial_q(n - d) * factorial_q(extra))
        }
    };
    let get = |i: usize| if i <= n { a_(i) } else { Rational::zero() };
    Ok(match j {
        0 => term(0, Rational::one(), 0),
        1 => term(2, get(2), 0),
        2 => term(3, get(3), 0) + term(4, pow_q(&get(2), 2), 2),
        3 => term(4, get(4), 0) + term(5, get(2) * get(3), 0) + term(6, pow_q(&get(2), 3), 3),
        _ => return Err(Error::InvalidArgument(format!("no closed form for j = {j}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{binomial_q, ratio};
    use proptest::prelude::*;

    fn seq(v: &[i64]) -> CoefficientSequence {
        CoefficientSequence::new(v.iter().map(|&x| int(x)).collect())
    }

    fn one_plus_t(n: usize) -> CoefficientSequence {
        let mut c = vec![Rational::zero(); n + 1];
        c[0] = int(1);
        if n >= 1 {
            c[1] = int(1);
        }
        CoefficientSequence::new(c)
    }

    #[test]
    fn partitions_examples() {
        assert_eq!(integer_partitions(3, 2), vec![IntPartitionMultiset { multiplicities: vec![1, 1, 0] }]);
        assert_eq!(integer_partitions(5, 5), vec![IntPartitionMultiset { multiplicities: vec![5, 0, 0, 0, 0] }]);
        assert!(integer_partitions(2, 0).is_empty());
        assert_eq!(integer_partitions(0, 0).len(), 1);
        assert_eq!(integer_partitions(3, 2)[0].to_string(), "1+2");
        for p in integer_partitions(12, 5) {
            assert_eq!(p.total(), 12);
            assert_eq!(p.parts(), 5);
        }
    }

    #[test]
    fn partition_counts() {
        // p(n, k) = p(n-1, k-1) + p(n-k, k)
        let max = 30;
        let mut p = vec![vec![0u64; max + 1]; max + 1];
        p[0][0] = 1;
        for n in 1..=max {
            for k in 1..=n {
                p[n][k] = p[n - 1][k - 1] + p[n - k][k];
            }
        }
        for n in 0..=max {
            let mut total = 0;
            for parts in 0..=n {
                let got = integer_partitions(n, parts).len() as u64;
                assert_eq!(got, p[n][parts], "({n},{parts})");
                total += got;
            }
            assert_eq!(total, p[n].iter().sum::<u64>());
        }
        assert_eq!(p[30].iter().sum::<u64>(), 5604);
    }

    #[test]
    fn bell_examples() {
        let a = seq(&[1, 2, 5, 7, 11]);
        assert_eq!(partial_bell(3, 1, &a).unwrap(), int(10));
        assert_eq!(partial_bell(3, 1, &seq(&[1, 1, 2, 5])).unwrap(), int(2));
        assert_eq!(partial_bell(2, 2, &a).unwrap(), int(0));
        assert_eq!(partial_bell(4, 0, &a).unwrap(), ratio(16, 24));
        assert!(partial_bell(2, 3, &a).is_err());
        assert!(partial_bell(6, 1, &a).is_err());
    }

    #[test]
    fn hsu_examples() {
        assert_eq!(hsu_expansion(&one_plus_t(2), 2, &int(10), 2).unwrap(), ratio(1, 2));
        assert_eq!(hsu_expansion(&one_plus_t(3), 3, &int(10), 0).unwrap(), ratio(1, 6));
        let e: Vec<Rational> = (0..4).map(factorial_q).map(|f| Rational::one() / f).collect();
        for lambda in [int(4), ratio(7, 3), int(-5)] {
            assert_eq!(hsu_expansion(&CoefficientSequence::new(e.clone()), 1, &lambda, 1).unwrap(), int(1));
        }
        assert_eq!(hsu_expansion(&seq(&[2, 1, 0]), 2, &int(5), 1), Err(Error::LeadingCoefficient));
        assert_eq!(hsu_expansion(&one_plus_t(3), 3, &int(2), 2), Err(Error::VanishingPochhammer { j: 1 }));
    }

    #[test]
    fn hsu_is_exact_at_full_depth() {
        for n in 0..=8 {
            for lambda in [int(10), ratio(17, 2), int(-3)] {
                let exact = binomial_like(&lambda, n) / falling_factorial(&lambda, n);
                assert_eq!(exact, Rational::one() / factorial_q(n));
                assert_eq!(hsu_expansion(&one_plus_t(n), n, &lambda, n).unwrap(), exact);
            }
        }
    }

    // C(λ, n) for rational λ
    fn binomial_like(lambda: &Rational, n: usize) -> Rational {
        falling_factorial(lambda, n) / factorial_q(n)
    }

    #[test]
    fn hsu_matches_power_coefficients() {
        // φ = 1 + 2t + 3t², λ = 9: exact from the binomial theorem
        let a = seq(&[1, 2, 3, 0, 0, 0]);
        let lambda = int(9);
        let mut phi = TruncatedSeries::from_coeffs(a.coeffs.clone(), 5);
        phi = phi.pow(9);
        for n in 0..=5 {
            let exact = phi.coeff(n).unwrap() / falling_factorial(&lambda, n);
            assert_eq!(hsu_expansion(&a, n, &lambda, n).unwrap(), exact);
        }
        assert_eq!(binomial_q(9, 2), int(36));
    }

    #[test]
    fn normalized_mode() {
        let (g, a, b) = (int(1), int(1), int(2));
        for k in [3, 7, 20] {
            let r = asymptotic_partial(0, k, &g, &a, &b, 2, 0, AsymptoticMode::Normalized).unwrap();
            assert_eq!(r.estimate, int(1));
            assert_eq!(r.rel_error, Some(int(0)));
        }
        // depth n - 1 already recovers the exact coefficient
        let r = asymptotic_partial(4, 20, &g, &a, &b, 2, 3, AsymptoticMode::Normalized).unwrap();
        assert_eq!(r.rel_error, Some(int(0)));
        let e20 = asymptotic_partial(5, 20, &g, &a, &b, 2, 3, AsymptoticMode::Normalized).unwrap();
        let e40 = asymptotic_partial(5, 40, &g, &a, &b, 2, 3, AsymptoticMode::Normalized).unwrap();
        assert!(e40.rel_error.unwrap() < e20.rel_error.unwrap());
    }

    #[test]
    fn normalized_exact_uses_the_power_of_psi() {
        let (g, a, b) = (int(2), int(1), int(3));
        let psi = normalized_psi(&g, &a, &b, 1, 6).unwrap();
        let series = TruncatedSeries::from_coeffs(psi.coeffs.clone(), 6).pow(7);
        for n in 0..=6 {
            let r = asymptotic_partial(n, 7, &g, &a, &b, 1, 0, AsymptoticMode::Normalized).unwrap();
            let direct = series.coeff(n).unwrap() / falling_factorial(&int(7), n);
            assert_eq!(r.exact, Some(direct));
        }
    }

    #[test]
    fn literal_mode_is_undefined_for_small_n() {
        let (g, a, b) = (int(1), int(1), int(2));
        let r = asymptotic_partial(4, 20, &g, &a, &b, 2, 3, AsymptoticMode::Literal).unwrap();
        assert_eq!(r.exact, Some(int(0)));
        assert_eq!(r.rel_error, None);
        let r = asymptotic_partial(5, 3, &g, &a, &b, 2, 0, AsymptoticMode::Literal).unwrap();
        assert_eq!(r.exact, None);
        assert!(asymptotic_partial(2, 0, &g, &a, &b, 2, 0, AsymptoticMode::Literal).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&ratio(1, 4)), "2.500000e-1");
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..7).prop_map(|(p, q)| ratio(p, q))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn closed_forms(rest in proptest::collection::vec(rational(), 12)) {
            let mut coeffs = vec![int(1)];
            coeffs.extend(rest);
            let a = CoefficientSequence::new(coeffs);
            for n in 0..=12 {
                for j in 0..=3.min(n) {
                    prop_assert_eq!(partial_bell(n, j, &a).unwrap(), bell_closed_form(n, j, &a).unwrap(), "n={} j={}", n, j);
                }
            }
        }
    }
}
