//! Privacy metrics for anonymized database tables.
//!
//! Given a CSV table and a schema that marks each attribute as an explicit
//! identifier, quasi-identifier, or sensitive attribute, this crate computes
//! k-anonymity, distinct l-diversity, and t-closeness. For numerical
//! sensitive attributes the earth mover's distance is evaluated three
//! mutually verifying ways (prefix-sum definition, single-pass linear scan,
//! and an explicit optimal transport plan); categorical attributes use the
//! variational distance. All probabilities and distances are exact rationals,
//! so published worked examples reproduce digit for digit.

pub mod bench;
pub mod distribution;
pub mod emd;
pub mod metrics;
pub mod reference;
pub mod report;
pub mod table;

#[cfg(test)]
pub(crate) mod testdata;

/// Exact rational number used for all probabilities and distances.
pub type Rational = num_rational::BigRational;

pub use distribution::{Distribution, Domain, OrderingPolicy, ValueMultiset};
pub use emd::{TransportMove, TransportPlan};
pub use metrics::{AttributeCloseness, Method, PrivacyAudit};
pub use table::{AttributeRole, EquivalenceClass, MissingValuePolicy, Schema, Table};
