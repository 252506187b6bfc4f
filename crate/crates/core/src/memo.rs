//! Process-wide cache of generating-function series, keyed by family and
//! block count. A cached series is reused for any coefficient index up to its
//! truncation order and rebuilt at a larger order on demand.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::egf::{egf_coeff, TruncatedSeries};
use crate::error::Result;
use crate::exact_arith::Rational;
use crate::family::FamilySpec;

const MIN_ORDER: usize = 16;

type Cache = Mutex<HashMap<(FamilySpec, usize), TruncatedSeries>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `n! [x^n]` of the k-th generating function of `spec`, where `build(order)`
/// produces that series truncated at `order`.
pub(crate) fn egf_value(
    spec: &FamilySpec,
    n: usize,
    k: usize,
    build: impl FnOnce(usize) -> Result<TruncatedSeries>,
) -> Result<Rational> {
    let key = (spec.clone(), k);
    if let Some(s) = cache().lock().expect("cache poisoned").get(&key) {
        if s.order() >= n {
            return egf_coeff(s, n);
        }
    }
    let series = build(n.max(MIN_ORDER))?;
    let value = egf_coeff(&series, n)?;
    let mut guard = cache().lock().expect("cache poisoned");
    let keep = guard.get(&key).is_some_and(|s| s.order() >= series.order());
    if !keep {
        guard.insert(key, series);
    }
    Ok(value)
}
