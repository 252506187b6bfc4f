//! Classic, restricted (`S(n,k)_{<=ℓ}`) and associated (`S(n,k)_{>=ℓ}`)
//! Stirling numbers of the second kind.
//!
//! Values come from coefficient extraction in the exponential generating
//! functions; the recursions are kept as separate computation paths so they
//! can be checked against each other.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::egf::{exp_series, incomplete_exp, TruncatedSeries};
use crate::error::{Error, Result};
use crate::exact_arith::{binomial, binomial_q, factorial_q, from_biguint, int, to_natural, Rational};
use crate::family::{FamilySpec, Form};
use crate::memo::egf_value;

/// `(e^x - 1)^k / k!`.
pub fn classic_egf(k: usize, order: usize) -> TruncatedSeries {
    let block = exp_series(&int(1), order)
        .try_sub(&TruncatedSeries::one(order))
        .expect("equal orders");
    block.pow(k).scale(&(Rational::one() / factorial_q(k)))
}

/// `(e_{<=ℓ}(x) - 1)^k / k!`.
pub fn restricted_egf(k: usize, ell: usize, order: usize) -> TruncatedSeries {
    let block = incomplete_exp(ell, false, order)
        .try_sub(&TruncatedSeries::one(order))
        .expect("equal orders");
    block.pow(k).scale(&(Rational::one() / factorial_q(k)))
}

/// `(e^x - e_{<ℓ}(x))^k / k!`. Blocks are non-empty, so `ℓ = 0` acts as `ℓ = 1`.
pub fn associated_egf(k: usize, ell: usize, order: usize) -> TruncatedSeries {
    let block = exp_series(&int(1), order)
        .try_sub(&incomplete_exp(ell.max(1), true, order))
        .expect("equal orders");
    block.pow(k).scale(&(Rational::one() / factorial_q(k)))
}

fn natural(q: Rational) -> BigUint {
    to_natural(&q).expect("partition counts are natural numbers")
}

/// Number of partitions of `[n]` into `k` non-empty blocks.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    let v = egf_value(&FamilySpec::Classic, n, k, |order| Ok(classic_egf(k, order)));
    natural(v.expect("classic series covers every index"))
}

/// Partitions of `[n]` into `k` blocks of size at most `ell`.
pub fn stirling2_restricted(n: usize, k: usize, ell: usize) -> Result<BigUint> {
    if ell == 0 {
        return Err(Error::ZeroEll);
    }
    let spec = FamilySpec::Restricted { ell };
    egf_value(&spec, n, k, |order| Ok(restricted_egf(k, ell, order))).map(natural)
}

/// Partitions of `[n]` into `k` blocks of size at least `ell`.
pub fn stirling2_associated(n: usize, k: usize, ell: usize) -> BigUint {
    let spec = FamilySpec::Associated { ell: ell.max(1) };
    let v = egf_value(&spec, n, k, |order| Ok(associated_egf(k, ell, order)));
    natural(v.expect("associated series covers every index"))
}

fn table(n: usize, k: usize, mut step: impl FnMut(&[Vec<BigUint>], usize, usize) -> BigUint) -> BigUint {
    // rows[m][j] = value at (m, j)
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    let mut first = vec![BigUint::zero(); k + 1];
    first[0] = BigUint::one();
    rows.push(first);
    for m in 0..n {
        let row = (0..=k).map(|j| step(&rows, m, j)).collect();
        rows.push(row);
    }
    rows[n][k].clone()
}

/// `S(n,k)` through `S(m+1,j) = j S(m,j) + S(m,j-1)`.
pub fn stirling2_by_recurrence(n: usize, k: usize) -> BigUint {
    table(n, k, |rows, m, j| {
        let mut v = &rows[m][j] * j;
        if j > 0 {
            v += &rows[m][j - 1];
        }
        v
    })
}

/// `S(m+1,j)_{<=ℓ} = sum_{i=0}^{ℓ-1} C(m,i) S(m-i,j-1)_{<=ℓ}`.
pub fn restricted_by_recurrence(n: usize, k: usize, ell: usize) -> Result<BigUint> {
    if ell == 0 {
        return Err(Error::ZeroEll);
    }
    Ok(table(n, k, |rows, m, j| {
        if j == 0 {
            return BigUint::zero();
        }
        (0..ell.min(m + 1))
            .map(|i| binomial(m, i as i64) * &rows[m - i][j - 1])
            .sum()
    }))
}

/// `S(m+1,j)_{>=ℓ} = sum_{i=ℓ-1}^{m} C(m,i) S(m-i,j-1)_{>=ℓ}`.
pub fn associated_by_recurrence(n: usize, k: usize, ell: usize) -> BigUint {
    let ell = ell.max(1);
    table(n, k, |rows, m, j| {
        if j == 0 {
            return BigUint::zero();
        }
        (ell - 1..=m)
            .map(|i| binomial(m, i as i64) * &rows[m - i][j - 1])
            .sum()
    })
}

fn s2(n: i64, k: i64) -> Rational {
    if n < 0 || k < 0 {
        Rational::zero()
    } else {
        from_biguint(&stirling2(n as usize, k as usize))
    }
}

/// Right-hand side of the classic recurrence for `S(n+1, k)`, evaluated from
/// canonical values. The literal form reads `k S(n,k) + S(n-1,k)`.
pub fn classic_recursion_step(n_plus_1: usize, k: usize, form: Form) -> Result<Rational> {
    let n = n_plus_1
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidArgument("the recurrence needs n + 1 >= 1".into()))? as i64;
    let k = k as i64;
    let first = int(k) * s2(n, k);
    Ok(match form {
        Form::Literal => first + s2(n - 1, k),
        Form::Corrected => first + s2(n, k - 1),
    })
}

/// Right-hand side of the restricted recurrence for `S(n+1,k)_{<=ℓ}`.
pub fn restricted_recursion_step(n_plus_1: usize, k: usize, ell: usize) -> Result<Rational> {
    let n = n_plus_1
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidArgument("the recurrence needs n + 1 >= 1".into()))?;
    if k == 0 {
        return Ok(Rational::zero());
    }
    let mut acc = Rational::zero();
    for i in 0..ell.min(n + 1) {
        acc += binomial_q(n, i as i64) * from_biguint(&stirling2_restricted(n - i, k - 1, ell)?);
    }
    Ok(acc)
}

/// Right-hand side of the associated recurrence for `S(n+1,k)_{>=ℓ}`.
pub fn associated_recursion_step(n_plus_1: usize, k: usize, ell: usize) -> Result<Rational> {
    let n = n_plus_1
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidArgument("the recurrence needs n + 1 >= 1".into()))?;
    if k == 0 {
        return Ok(Rational::zero());
    }
    let ell = ell.max(1);
    Ok((ell - 1..=n)
        .map(|i| binomial_q(n, i as i64) * from_biguint(&stirling2_associated(n - i, k - 1, ell)))
        .sum())
}
