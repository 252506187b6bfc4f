//! Tagged parameter records for the number families and a single dispatcher
//! that evaluates any family by any of its available methods.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::egf::TruncatedSeries;
use crate::error::{Error, Result};
use crate::exact_arith::{divides, from_biguint, int, is_nonneg_integer, Rational};
use crate::generalized::{
    degenerate_egf, degenerate_stirling, gen_stirling, gen_stirling_by_recurrence, gen_stirling_explicit,
    generalized_egf,
};
use crate::incomplete_generalized::{
    free_atleast, free_atleast_by_recurrence, free_atleast_egf, gen_restricted, gen_restricted_by_recurrence,
    gen_restricted_egf,
};
use crate::oracle::{oracle_sum, WeightScheme};
use crate::partial_degenerate::{
    colored_singleton, colored_singleton_egf, partial_deg, partial_deg_by_recurrence, partial_deg_convolution,
    partial_deg_egf,
};
use crate::stirling_core::{
    associated_by_recurrence, associated_egf, classic_egf, restricted_by_recurrence, restricted_egf, stirling2,
    stirling2_associated, stirling2_by_recurrence, stirling2_restricted,
};

/// Which reading of an identity to evaluate: as printed, or repaired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Literal,
    Corrected,
}

/// A number family together with exactly the parameters it needs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Classic,
    Restricted { ell: usize },
    Associated { ell: usize },
    Degenerate { lambda: Rational },
    Generalized { alpha: Rational, beta: Rational, gamma: Rational },
    GenRestricted { alpha: Rational, beta: Rational, gamma: Rational, ell: usize },
    FreeAtLeast { gamma: Rational, ell: usize },
    PartialDegenerate { gamma: Rational, alpha: Rational, beta: Rational, ell: usize },
    ColoredSingleton { r: u64, s: u64 },
}

/// How a value is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Egf,
    Recurrence,
    Explicit,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Egf, Method::Recurrence, Method::Explicit, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::Egf => "egf",
            Method::Recurrence => "recurrence",
            Method::Explicit => "explicit",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method `{s}`")))
    }
}

/// Parameters as supplied by a caller, before they are matched to a family.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParamSet {
    pub ell: Option<usize>,
    pub alpha: Option<Rational>,
    pub beta: Option<Rational>,
    pub gamma: Option<Rational>,
    pub lambda: Option<Rational>,
    pub r: Option<u64>,
    pub s: Option<u64>,
}

/// Accepted family names, canonical spelling first.
pub const FAMILY_NAMES: [&str; 9] = [
    "classic",
    "restricted",
    "associated",
    "degenerate",
    "generalized",
    "gen-restricted",
    "free-atleast",
    "partial",
    "colored",
];

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Classic => "classic",
            FamilySpec::Restricted { .. } => "restricted",
            FamilySpec::Associated { .. } => "associated",
            FamilySpec::Degenerate { .. } => "degenerate",
            FamilySpec::Generalized { .. } => "generalized",
            FamilySpec::GenRestricted { .. } => "gen-restricted",
            FamilySpec::FreeAtLeast { .. } => "free-atleast",
            FamilySpec::PartialDegenerate { .. } => "partial",
            FamilySpec::ColoredSingleton { .. } => "colored",
        }
    }

    /// Builds a family from its name and a parameter set. Missing required
    /// parameters and parameters the family does not take are both errors.
    pub fn from_params(name: &str, p: &ParamSet) -> Result<Self> {
        let alias = match name {
            "gen_restricted" | "generalized-restricted" => "gen-restricted",
            "free_atleast" | "free" => "free-atleast",
            "partial_degenerate" | "partial-degenerate" => "partial",
            "colored_singleton" | "colored-singleton" => "colored",
            other => other,
        };
        let allowed: &[&str] = match alias {
            "classic" => &[],
            "restricted" | "associated" => &["ell"],
            "degenerate" => &["lambda"],
            "generalized" => &["alpha", "beta", "gamma"],
            "gen-restricted" | "partial" => &["alpha", "beta", "gamma", "ell"],
            "free-atleast" => &["gamma", "ell"],
            "colored" => &["r", "s"],
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown family `{name}` (expected one of {})",
                    FAMILY_NAMES.join(", ")
                )))
            }
        };
        let present = [
            ("ell", p.ell.is_some()),
            ("alpha", p.alpha.is_some()),
            ("beta", p.beta.is_some()),
            ("gamma", p.gamma.is_some()),
            ("lambda", p.lambda.is_some()),
            ("r", p.r.is_some()),
            ("s", p.s.is_some()),
        ];
        for (flag, set) in present {
            if set && !allowed.contains(&flag) {
                return Err(Error::InvalidArgument(format!("family `{alias}` does not take --{flag}")));
            }
            if !set && allowed.contains(&flag) {
                return Err(Error::InvalidArgument(format!("family `{alias}` requires --{flag}")));
            }
        }
        let q = |v: &Option<Rational>| v.clone().expect("checked above");
        let ell = p.ell.unwrap_or(0);
        let spec = match alias {
            "classic" => FamilySpec::Classic,
            "restricted" => FamilySpec::Restricted { ell },
            "associated" => FamilySpec::Associated { ell },
            "degenerate" => FamilySpec::Degenerate { lambda: q(&p.lambda) },
            "generalized" => FamilySpec::Generalized {
                alpha: q(&p.alpha),
                beta: q(&p.beta),
                gamma: q(&p.gamma),
            },
            "gen-restricted" => FamilySpec::GenRestricted {
                alpha: q(&p.alpha),
                beta: q(&p.beta),
                gamma: q(&p.gamma),
                ell,
            },
            "free-atleast" => FamilySpec::FreeAtLeast { gamma: q(&p.gamma), ell },
            "partial" => FamilySpec::PartialDegenerate {
                gamma: q(&p.gamma),
                alpha: q(&p.alpha),
                beta: q(&p.beta),
                ell,
            },
            _ => FamilySpec::ColoredSingleton {
                r: p.r.expect("checked above"),
                s: p.s.expect("checked above"),
            },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Domain checks shared by every method.
    pub fn validate(&self) -> Result<()> {
        let zero_triple = |a: &Rational, b: &Rational, g: &Rational| a.is_zero() && b.is_zero() && g.is_zero();
        match self {
            FamilySpec::Restricted { ell: 0 } => Err(Error::ZeroEll),
            FamilySpec::Generalized { alpha, beta, gamma } | FamilySpec::GenRestricted { alpha, beta, gamma, .. }
                if zero_triple(alpha, beta, gamma) =>
            {
                Err(Error::ZeroParameters)
            }
            FamilySpec::PartialDegenerate { beta, .. } if beta.is_zero() => Err(Error::ZeroBeta("partial degenerate numbers")),
            _ => Ok(()),
        }
    }

    /// True when the parameters are non-negative integers for which the
    /// numbers count partitions (with `α | β` and `α | γ` where relevant).
    pub fn is_combinatorial(&self) -> bool {
        let nat = is_nonneg_integer;
        match self {
            FamilySpec::Classic
            | FamilySpec::Restricted { .. }
            | FamilySpec::Associated { .. }
            | FamilySpec::ColoredSingleton { .. } => true,
            FamilySpec::Degenerate { lambda } => nat(lambda) && divides(lambda, &int(1)),
            FamilySpec::Generalized { alpha, beta, gamma } | FamilySpec::GenRestricted { alpha, beta, gamma, .. } => {
                nat(alpha) && nat(beta) && nat(gamma) && divides(alpha, beta) && divides(alpha, gamma)
            }
            FamilySpec::FreeAtLeast { gamma, .. } => nat(gamma),
            FamilySpec::PartialDegenerate { gamma, alpha, beta, .. } => {
                nat(gamma) && nat(alpha) && nat(beta) && divides(alpha, beta)
            }
        }
    }

    /// Methods that can evaluate this family with its current parameters.
    pub fn methods(&self) -> Vec<Method> {
        use Method::*;
        match self {
            FamilySpec::Classic | FamilySpec::Degenerate { .. } => vec![Egf, Recurrence, Explicit, Oracle],
            FamilySpec::Generalized { beta, .. } => {
                if beta.is_zero() {
                    vec![Recurrence, Oracle]
                } else {
                    vec![Egf, Recurrence, Explicit, Oracle]
                }
            }
            FamilySpec::GenRestricted { beta, .. } if beta.is_zero() => vec![Recurrence, Oracle],
            FamilySpec::Restricted { .. }
            | FamilySpec::Associated { .. }
            | FamilySpec::GenRestricted { .. }
            | FamilySpec::FreeAtLeast { .. } => vec![Egf, Recurrence, Oracle],
            FamilySpec::PartialDegenerate { .. } => vec![Egf, Recurrence, Explicit, Oracle],
            FamilySpec::ColoredSingleton { .. } => vec![Egf, Oracle],
        }
    }

    /// The method used when none is requested.
    pub fn canonical_method(&self) -> Method {
        self.methods()[0]
    }

    /// Weighted mixed-partition model of this family.
    pub fn weight_scheme(&self) -> WeightScheme {
        match self.clone() {
            FamilySpec::Classic => WeightScheme::classic(),
            FamilySpec::Restricted { ell } => WeightScheme::restricted(ell),
            FamilySpec::Associated { ell } => WeightScheme::associated(ell),
            FamilySpec::Degenerate { lambda } => WeightScheme::degenerate(lambda),
            FamilySpec::Generalized { alpha, beta, gamma } => WeightScheme::generalized(alpha, beta, gamma),
            FamilySpec::GenRestricted { alpha, beta, gamma, ell } => WeightScheme::gen_restricted(alpha, beta, gamma, ell),
            FamilySpec::FreeAtLeast { gamma, ell } => WeightScheme::free_atleast(gamma, ell),
            FamilySpec::PartialDegenerate { gamma, alpha, beta, ell } => {
                WeightScheme::partial_degenerate(gamma, alpha, beta, ell)
            }
            FamilySpec::ColoredSingleton { r, s } => WeightScheme::colored_singleton(r, s),
        }
    }

    /// The `k`-th generating function, truncated at `order`.
    pub fn egf_series(&self, k: usize, order: usize) -> Result<TruncatedSeries> {
        self.validate()?;
        match self {
            FamilySpec::Classic => Ok(classic_egf(k, order)),
            FamilySpec::Restricted { ell } => Ok(restricted_egf(k, *ell, order)),
            FamilySpec::Associated { ell } => Ok(associated_egf(k, *ell, order)),
            FamilySpec::Degenerate { lambda } => Ok(degenerate_egf(k, lambda, order)),
            FamilySpec::Generalized { alpha, beta, gamma } => generalized_egf(k, alpha, beta, gamma, order),
            FamilySpec::GenRestricted { alpha, beta, gamma, ell } => gen_restricted_egf(k, alpha, beta, gamma, *ell, order),
            FamilySpec::FreeAtLeast { gamma, ell } => Ok(free_atleast_egf(k, gamma, *ell, order)),
            FamilySpec::PartialDegenerate { gamma, alpha, beta, ell } => partial_deg_egf(k, *ell, gamma, alpha, beta, order),
            FamilySpec::ColoredSingleton { r, s } => Ok(colored_singleton_egf(k, *r, *s, order)),
        }
    }

    fn unsupported(&self, method: Method) -> Error {
        Error::UnsupportedMethod {
            family: self.name(),
            method: method.name(),
        }
    }

    /// Value at `(n, k)` by the canonical method.
    pub fn value(&self, n: usize, k: usize) -> Result<Rational> {
        self.value_by(n, k, self.canonical_method())
    }

    /// Value at `(n, k)` by a chosen method.
    pub fn value_by(&self, n: usize, k: usize, method: Method) -> Result<Rational> {
        self.validate()?;
        if !self.methods().contains(&method) {
            return Err(self.unsupported(method));
        }
        if method == Method::Oracle {
            return oracle_sum(n, k, &self.weight_scheme());
        }
        let one = Rational::one();
        let zero = Rational::zero();
        use FamilySpec as F;
        use Method::*;
        match (self, method) {
            (F::Classic, Egf) => Ok(from_biguint(&stirling2(n, k))),
            (F::Classic, Recurrence) => Ok(from_biguint(&stirling2_by_recurrence(n, k))),
            (F::Classic, Explicit) => gen_stirling_explicit(n, k, &zero, &one, &zero),
            (F::Restricted { ell }, Egf) => stirling2_restricted(n, k, *ell).map(|v| from_biguint(&v)),
            (F::Restricted { ell }, Recurrence) => restricted_by_recurrence(n, k, *ell).map(|v| from_biguint(&v)),
            (F::Associated { ell }, Egf) => Ok(from_biguint(&stirling2_associated(n, k, *ell))),
            (F::Associated { ell }, Recurrence) => Ok(from_biguint(&associated_by_recurrence(n, k, *ell))),
            (F::Degenerate { lambda }, Egf) => Ok(degenerate_stirling(n, k, lambda)),
            (F::Degenerate { lambda }, Recurrence) => gen_stirling_by_recurrence(n, k, lambda, &one, &zero),
            (F::Degenerate { lambda }, Explicit) => gen_stirling_explicit(n, k, lambda, &one, &zero),
            (F::Generalized { alpha, beta, gamma }, Egf) => gen_stirling(n, k, alpha, beta, gamma),
            (F::Generalized { alpha, beta, gamma }, Recurrence) => gen_stirling_by_recurrence(n, k, alpha, beta, gamma),
            (F::Generalized { alpha, beta, gamma }, Explicit) => gen_stirling_explicit(n, k, alpha, beta, gamma),
            (F::GenRestricted { alpha, beta, gamma, ell }, Egf) => gen_restricted(n, k, alpha, beta, gamma, *ell),
            (F::GenRestricted { alpha, beta, gamma, ell }, Recurrence) => {
                Ok(gen_restricted_by_recurrence(n, k, alpha, beta, gamma, *ell))
            }
            (F::FreeAtLeast { gamma, ell }, Egf) => Ok(free_atleast(n, k, gamma, *ell)),
            (F::FreeAtLeast { gamma, ell }, Recurrence) => Ok(free_atleast_by_recurrence(n, k, gamma, *ell)),
            (F::PartialDegenerate { gamma, alpha, beta, ell }, Egf) => partial_deg(n, k, *ell, gamma, alpha, beta),
            (F::PartialDegenerate { gamma, alpha, beta, ell }, Recurrence) => {
                partial_deg_by_recurrence(n, k, *ell, gamma, alpha, beta)
            }
            (F::PartialDegenerate { gamma, alpha, beta, ell }, Explicit) => {
                partial_deg_convolution(n, k, *ell, gamma, alpha, beta)
            }
            (F::ColoredSingleton { r, s }, Egf) => Ok(from_biguint(&colored_singleton(n, k, *r, *s))),
            _ => Err(self.unsupported(method)),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Classic => write!(f, "classic"),
            FamilySpec::Restricted { ell } => write!(f, "restricted(ell={ell})"),
            FamilySpec::Associated { ell } => write!(f, "associated(ell={ell})"),
            FamilySpec::Degenerate { lambda } => write!(f, "degenerate(lambda={lambda})"),
            FamilySpec::Generalized { alpha, beta, gamma } => {
                write!(f, "generalized(alpha={alpha}, beta={beta}, gamma={gamma})")
            }
            FamilySpec::GenRestricted { alpha, beta, gamma, ell } => {
                write!(f, "gen-restricted(alpha={alpha}, beta={beta}, gamma={gamma}, ell={ell})")
            }
            FamilySpec::FreeAtLeast { gamma, ell } => write!(f, "free-atleast(gamma={gamma}, ell={ell})"),
            FamilySpec::PartialDegenerate { gamma, alpha, beta, ell } => {
                write!(f, "partial(gamma={gamma}, alpha={alpha}, beta={beta}, ell={ell})")
            }
            FamilySpec::ColoredSingleton { r, s } => write!(f, "colored(r={r}, s={s})"),
        }
    }
}

/// Values of one family on the triangle `0 <= k <= n <= nmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueTable {
    pub family: FamilySpec,
    pub entries: BTreeMap<(usize, usize), Rational>,
}

impl ValueTable {
    pub fn compute(family: &FamilySpec, nmax: usize, method: Method) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for n in 0..=nmax {
            for k in 0..=n {
                entries.insert((n, k), family.value_by(n, k, method)?);
            }
        }
        Ok(ValueTable {
            family: family.clone(),
            entries,
        })
    }

    /// Stored value, or 0 above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> Option<Rational> {
        if k > n {
            return Some(Rational::zero());
        }
        self.entries.get(&(n, k)).cloned()
    }
}
