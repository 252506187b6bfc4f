//! Brute-force enumeration of mixed partitions `(G, P_k)`: a possibly empty
//! special set `G` and `k` non-empty unordered blocks covering `[n]`.
//!
//! Each pair is generated once, as a restricted-growth labelling in which
//! label 0 marks the special set and labels `1..=k` first appear in
//! increasing order. Weighted sums over these pairs are the ground truth the
//! other modules are tested against.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{falling_factorial_deg, int, pow_q, Rational};

/// Largest `n` enumerated unless a caller passes its own cap.
pub const DEFAULT_CAP: usize = 11;

/// A special set and `k` blocks over `{1, ..., n}`, blocks ordered by their
/// minimum element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedPartition {
    pub special_set: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

impl MixedPartition {
    fn from_labels(labels: &[usize], k: usize) -> Self {
        let mut special_set = Vec::new();
        let mut blocks = vec![Vec::new(); k];
        for (i, &l) in labels.iter().enumerate() {
            if l == 0 {
                special_set.push(i + 1);
            } else {
                blocks[l - 1].push(i + 1);
            }
        }
        MixedPartition { special_set, blocks }
    }

    pub fn block_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().map(Vec::len)
    }
}

type SizeFn<T> = Box<dyn Fn(usize) -> T + Send + Sync>;

/// Weights for the special set and the blocks, plus an admissibility
/// predicate on block sizes.
pub struct WeightScheme {
    pub special_weight: SizeFn<Rational>,
    pub block_weight: SizeFn<Rational>,
    pub filter: SizeFn<bool>,
}

impl fmt::Debug for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightScheme").finish_non_exhaustive()
    }
}

fn empty_only(g: usize) -> Rational {
    if g == 0 {
        Rational::one()
    } else {
        Rational::zero()
    }
}

impl WeightScheme {
    pub fn new(
        special_weight: impl Fn(usize) -> Rational + Send + Sync + 'static,
        block_weight: impl Fn(usize) -> Rational + Send + Sync + 'static,
        filter: impl Fn(usize) -> bool + Send + Sync + 'static,
    ) -> Self {
        WeightScheme {
            special_weight: Box::new(special_weight),
            block_weight: Box::new(block_weight),
            filter: Box::new(filter),
        }
    }

    /// Every pair has weight 1.
    pub fn all_ones() -> Self {
        Self::new(|_| Rational::one(), |_| Rational::one(), |_| true)
    }

    pub fn classic() -> Self {
        Self::new(empty_only, |_| Rational::one(), |_| true)
    }

    pub fn restricted(ell: usize) -> Self {
        Self::new(empty_only, |_| Rational::one(), move |s| s <= ell)
    }

    pub fn associated(ell: usize) -> Self {
        Self::new(empty_only, |_| Rational::one(), move |s| s >= ell)
    }

    /// `w(G) = (γ)_{|G|,α}`, `w(B) = (β-α)_{|B|-1,α}`.
    pub fn generalized(alpha: Rational, beta: Rational, gamma: Rational) -> Self {
        Self::gen_filtered(alpha, beta, gamma, |_| true)
    }

    pub fn degenerate(lambda: Rational) -> Self {
        Self::generalized(lambda, int(1), int(0))
    }

    pub fn gen_restricted(alpha: Rational, beta: Rational, gamma: Rational, ell: usize) -> Self {
        Self::gen_filtered(alpha, beta, gamma, move |s| s <= ell)
    }

    pub fn gen_associated(alpha: Rational, beta: Rational, gamma: Rational, ell: usize) -> Self {
        Self::gen_filtered(alpha, beta, gamma, move |s| s >= ell)
    }

    fn gen_filtered(
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
        filter: impl Fn(usize) -> bool + Send + Sync + 'static,
    ) -> Self {
        let a = alpha.clone();
        let base = &beta - &alpha;
        Self::new(
            move |g| falling_factorial_deg(&gamma, g, &a),
            move |s| falling_factorial_deg(&base, s - 1, &alpha),
            filter,
        )
    }

    /// `w(G) = γ^{|G|}`, blocks of size greater than `ℓ` with weight 1.
    pub fn free_atleast(gamma: Rational, ell: usize) -> Self {
        Self::new(move |g| pow_q(&gamma, g), |_| Rational::one(), move |s| s > ell)
    }

    /// Blocks of size at most `ℓ` weigh `(β-α)_{|B|-1,α}`, larger blocks 1,
    /// and `w(G) = γ^{|G|}`.
    pub fn partial_degenerate(gamma: Rational, alpha: Rational, beta: Rational, ell: usize) -> Self {
        let base = &beta - &alpha;
        Self::new(
            move |g| pow_q(&gamma, g),
            move |s| {
                if s <= ell {
                    falling_factorial_deg(&base, s - 1, &alpha)
                } else {
                    Rational::one()
                }
            },
            |_| true,
        )
    }

    /// The partial degenerate weights with the two block regimes exchanged.
    pub fn partial_swapped(gamma: Rational, alpha: Rational, beta: Rational, ell: usize) -> Self {
        let base = &beta - &alpha;
        Self::new(
            move |g| pow_q(&gamma, g),
            move |s| {
                if s <= ell {
                    Rational::one()
                } else {
                    falling_factorial_deg(&base, s - 1, &alpha)
                }
            },
            |_| true,
        )
    }

    /// `w(G) = r^{|G|}`, singleton blocks weigh `s`, other blocks 1.
    pub fn colored_singleton(r: u64, s: u64) -> Self {
        let (r, s) = (int(r as i64), int(s as i64));
        Self::new(
            move |g| pow_q(&r, g),
            move |size| if size == 1 { s.clone() } else { Rational::one() },
            |_| true,
        )
    }
}

/// Iterator over the admissible mixed partitions of `[n]` with `k` blocks.
pub struct MixedPartitions<F> {
    n: usize,
    k: usize,
    filter: F,
    labels: Vec<usize>,
    // prefix maxima: maxes[i] = max(labels[..i])
    maxes: Vec<usize>,
    state: State,
}

enum State {
    Fresh,
    Running,
    Done,
}

impl<F: Fn(usize) -> bool> MixedPartitions<F> {
    /// Fills `labels[from..]` with the smallest completion that still opens
    /// all `k` blocks.
    fn fill_from(&mut self, from: usize) {
        for p in from..self.n {
            let m = self.maxes[p];
            let left = self.n - p - 1;
            let l = if left >= self.k - m { 0 } else { m + 1 };
            self.labels[p] = l;
            self.maxes[p + 1] = m.max(l);
        }
    }

    fn advance(&mut self) -> bool {
        for i in (0..self.n).rev() {
            let cap = (self.maxes[i] + 1).min(self.k);
            if self.labels[i] < cap {
                self.labels[i] += 1;
                self.maxes[i + 1] = self.maxes[i].max(self.labels[i]);
                self.fill_from(i + 1);
                return true;
            }
        }
        false
    }

    fn admissible(&self) -> bool {
        let mut sizes = vec![0usize; self.k + 1];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes[1..].iter().all(|&s| (self.filter)(s))
    }
}

impl<F: Fn(usize) -> bool> Iterator for MixedPartitions<F> {
    type Item = MixedPartition;

    fn next(&mut self) -> Option<MixedPartition> {
        loop {
            match self.state {
                State::Done => return None,
                State::Fresh => {
                    self.state = State::Running;
                    if self.k > self.n {
                        self.state = State::Done;
                        return None;
                    }
                    self.fill_from(0);
                }
                State::Running => {
                    if !self.advance() {
                        self.state = State::Done;
                        return None;
                    }
                }
            }
            if self.admissible() {
                return Some(MixedPartition::from_labels(&self.labels, self.k));
            }
        }
    }
}

/// All pairs `(G, P_k)` over `[n]` whose block sizes pass `filter`, in a fixed
/// lexicographic order of their labellings.
pub fn enumerate_mixed<F: Fn(usize) -> bool>(n: usize, k: usize, filter: F) -> Result<MixedPartitions<F>> {
    enumerate_mixed_with_cap(n, k, filter, DEFAULT_CAP)
}

pub fn enumerate_mixed_with_cap<F: Fn(usize) -> bool>(
    n: usize,
    k: usize,
    filter: F,
    cap: usize,
) -> Result<MixedPartitions<F>> {
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    Ok(MixedPartitions {
        n,
        k,
        filter,
        labels: vec![0; n],
        maxes: vec![0; n + 1],
        state: State::Fresh,
    })
}

/// `sum w(G) Π w(B_i)` over the admissible pairs.
pub fn oracle_sum(n: usize, k: usize, scheme: &WeightScheme) -> Result<Rational> {
    oracle_sum_with_cap(n, k, scheme, DEFAULT_CAP)
}

pub fn oracle_sum_with_cap(n: usize, k: usize, scheme: &WeightScheme, cap: usize) -> Result<Rational> {
    let mut acc = Rational::zero();
    for p in enumerate_mixed_with_cap(n, k, &scheme.filter, cap)? {
        let mut w = (scheme.special_weight)(p.special_set.len());
        for s in p.block_sizes() {
            if w.is_zero() {
                break;
            }
            w *= (scheme.block_weight)(s);
        }
        acc += w;
    }
    Ok(acc)
}

/// Same pairs as [`oracle_sum`], but the weight of `P_k` is the sum of its
/// block weights instead of their product.
pub fn oracle_sum_additive(n: usize, k: usize, scheme: &WeightScheme) -> Result<Rational> {
    let mut acc = Rational::zero();
    for p in enumerate_mixed(n, k, &scheme.filter)? {
        let blocks: Rational = if p.blocks.is_empty() {
            Rational::one()
        } else {
            p.block_sizes().map(|s| (scheme.block_weight)(s)).sum()
        };
        acc += (scheme.special_weight)(p.special_set.len()) * blocks;
    }
    Ok(acc)
}
