//! Exact rational scalars and the factorial-type primitives shared by all
//! number families.
//!
//! Every value in the crate is a [`Rational`]; `num-rational` keeps it in
//! canonical form (reduced, positive denominator) after each operation.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p/q` as a rational. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_biguint(v: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(v.clone()))
}

/// The value as a natural number, if it is a nonnegative integer.
pub fn to_natural(q: &Rational) -> Option<BigUint> {
    if q.is_integer() && !q.is_negative() {
        q.numer().to_biguint()
    } else {
        None
    }
}

/// The value as a `u64`, if it is a nonnegative integer that fits.
pub fn to_u64(q: &Rational) -> Option<u64> {
    to_natural(q).and_then(|v| v.to_u64())
}

/// Parses `[+-]digits` or `[+-]digits/digits` with a positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (t, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let p = BigInt::from_str(num).map_err(|_| err())?;
    let q = match den {
        None => BigInt::one(),
        Some(q) => {
            if q.is_empty() || !q.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let q = BigInt::from_str(q).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            q
        }
    };
    Ok(Rational::new(p, q))
}

/// Degenerate falling factorial `t (t - λ) ... (t - (n-1)λ)`, with the empty
/// product equal to 1.
pub fn falling_factorial_deg(t: &Rational, n: usize, lambda: &Rational) -> Rational {
    let mut acc = Rational::one();
    let mut factor = t.clone();
    for _ in 0..n {
        acc *= &factor;
        if acc.is_zero() {
            return acc;
        }
        factor -= lambda;
    }
    acc
}

/// Ordinary falling factorial `(t)_n = (t)_{n,1}`.
pub fn falling_factorial(t: &Rational, n: usize) -> Rational {
    falling_factorial_deg(t, n, &Rational::one())
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn factorial_q(n: usize) -> Rational {
    from_biguint(&factorial(n))
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: i64) -> BigUint {
    if k < 0 || k as u64 > n as u64 {
        return BigUint::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= (n - i) as u64;
        acc /= (i + 1) as u64;
    }
    acc
}

pub fn binomial_q(n: usize, k: i64) -> Rational {
    from_biguint(&binomial(n, k))
}

/// `n! / (parts_1! parts_2! ...)`; the parts must sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigUint> {
    let sum: usize = parts.iter().sum();
    if sum != n {
        return Err(Error::MultinomialSum { n, sum });
    }
    let mut acc = BigUint::one();
    let mut used = 0usize;
    for &p in parts {
        used += p;
        acc *= binomial(used, p as i64);
    }
    Ok(acc)
}

/// `q^e` for a natural exponent, with `q^0 = 1` (including `0^0`).
pub fn pow_q(q: &Rational, e: usize) -> Rational {
    num_traits::pow(q.clone(), e)
}

/// Whether `d` divides `v` as integers; `0` is treated as dividing any value,
/// which matches the free-cell convention of the combinatorial models.
pub fn divides(d: &Rational, v: &Rational) -> bool {
    if !d.is_integer() || !v.is_integer() {
        return false;
    }
    d.is_zero() || v.numer().is_multiple_of(d.numer())
}

pub fn is_nonneg_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative()
}
