//! Truncated formal power series over exact rationals.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0..c_N` and represents
//! `sum c_n t^n mod t^(N+1)`. Every identity checked through this module is
//! therefore an identity modulo `t^(N+1)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{factorial_q, falling_factorial_deg, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TruncatedSeries {
    #[serde(serialize_with = "serialize_coeffs")]
    coeffs: Vec<Rational>,
}

fn serialize_coeffs<S: serde::Serializer>(c: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|q| q.to_string()))
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c t^d`; zero when `d` exceeds the order.
    pub fn monomial(c: Rational, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Builds a series from leading coefficients, padding with zeros or
    /// dropping terms above `order`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    /// Series whose n-th coefficient is `f(n)`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&Rational> {
        self.coeffs.get(n).ok_or(Error::IndexBeyondOrder {
            index: n,
            order: self.order(),
        })
    }

    /// Index of the first non-zero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `t^d · self`, truncated.
    pub fn shift_up(&self, d: usize) -> Self {
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate().take((order + 1).saturating_sub(d)) {
            out[i + d] = c.clone();
        }
        Self { coeffs: out }
    }

    /// Restricts to a lower truncation order.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    /// `self^k` by repeated squaring. A factor `t^v` is pulled out first so
    /// that powers of series with large valuation stay cheap.
    pub fn pow(&self, k: usize) -> Self {
        let order = self.order();
        if k == 0 {
            return Self::one(order);
        }
        let Some(v) = self.valuation() else {
            return Self::zero(order);
        };
        if v > 0 {
            let Some(shift) = v.checked_mul(k).filter(|&s| s <= order) else {
                return Self::zero(order);
            };
            let low = order - shift;
            let reduced = Self {
                coeffs: self.coeffs[v..=v + low].to_vec(),
            };
            let mut coeffs = vec![Rational::zero(); shift];
            coeffs.extend(reduced.pow(k).coeffs);
            return Self { coeffs };
        }
        let mut base = self.clone();
        let mut acc = Self::one(order);
        let mut e = k;
        loop {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("equal orders");
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.try_mul(&base).expect("equal orders");
        }
        acc
    }

    /// Formal derivative; the top coefficient becomes zero.
    pub fn derivative(&self) -> Self {
        let order = self.order();
        Self::from_fn(order, |n| {
            if n < order {
                &self.coeffs[n + 1] * Rational::from_integer((n as u64 + 1).into())
            } else {
                Rational::zero()
            }
        })
    }
}

/// `e^(γt)`: coefficients `γ^n / n!`.
pub fn exp_series(gamma: &Rational, order: usize) -> TruncatedSeries {
    let mut c = Rational::one();
    TruncatedSeries::from_fn(order, |n| {
        if n > 0 {
            c = &c * gamma / Rational::from_integer((n as u64).into());
        }
        c.clone()
    })
}

/// Degenerate exponential `e_λ^x(t) = sum (x)_{n,λ} t^n / n!`.
pub fn degenerate_exp(x: &Rational, lambda: &Rational, order: usize) -> TruncatedSeries {
    let mut c = Rational::one();
    let mut factor = x.clone();
    TruncatedSeries::from_fn(order, |n| {
        if n > 0 {
            c = &c * &factor / Rational::from_integer((n as u64).into());
            factor -= lambda;
        }
        c.clone()
    })
}

/// Incomplete exponential `e_{<=ℓ}` (or `e_{<ℓ}` when `strict`).
pub fn incomplete_exp(ell: usize, strict: bool, order: usize) -> TruncatedSeries {
    let top = if strict { ell.checked_sub(1) } else { Some(ell) };
    TruncatedSeries::from_fn(order, |n| match top {
        Some(t) if n <= t => Rational::one() / factorial_q(n),
        _ => Rational::zero(),
    })
}

/// Incomplete degenerate exponential `sum_{n<=ℓ} (x)_{n,λ} t^n / n!`.
pub fn incomplete_degenerate_exp(x: &Rational, lambda: &Rational, ell: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |n| {
        if n <= ell {
            falling_factorial_deg(x, n, lambda) / factorial_q(n)
        } else {
            Rational::zero()
        }
    })
}

/// `n! [t^n] A`.
pub fn egf_coeff(a: &TruncatedSeries, n: usize) -> Result<Rational> {
    Ok(a.coeff(n)? * factorial_q(n))
}
