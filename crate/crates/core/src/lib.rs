//! Exact computation of Stirling numbers of the second kind and their
//! degenerate, incomplete and partial degenerate generalizations.
//!
//! Every family is evaluated by coefficient extraction from its exponential
//! generating function, with recurrences, explicit sums and a brute-force
//! weighted-partition enumeration kept as independent cross-checks. The
//! [`audit`] module runs the published identities in their printed and
//! repaired forms; [`asymptotics`] holds the power-expansion machinery.

pub mod asymptotics;
pub mod audit;
pub mod egf;
pub mod error;
pub mod exact_arith;
pub mod family;
pub mod generalized;
pub mod incomplete_generalized;
mod memo;
pub mod oracle;
pub mod partial_degenerate;
pub mod stirling_core;

pub use egf::TruncatedSeries;
pub use error::{Error, Result};
pub use exact_arith::{parse_rational, Rational};
pub use family::{FamilySpec, Form, Method, ParamSet, ValueTable};
