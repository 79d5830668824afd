//! Exact proportions of permutations whose order divides `m`, in the
//! symmetric and alternating groups, together with the divisor-count and
//! conditional-probability bounds built on them.
//!
//! All proportions are [`ExactRational`]. Quantities involving cube or square
//! roots are either compared in powered form or carried as a certified
//! [`Enclosure`].

pub mod bounds;
pub mod divisors;
mod error;
pub mod numeric;
pub mod proportions;
pub mod recognition;
pub mod report;
pub mod sampler;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type ExactRational = num_rational::BigRational;

pub use divisors::{DivisorBoundVariant, DivisorProfile, GammaValue};
pub use error::{Error, Result};
pub use numeric::Enclosure;
pub use proportions::{CycleType, OracleMode, ProportionTable, SplitProportions};
pub use recognition::{CaseSpec, CondProbReport, Group};
pub use report::{BoundKind, BoundReport};
pub use sampler::{Event, SampleStats, SearchCost};
