//! Table-level privacy metrics: k-anonymity, distinct l-diversity, and
//! t-closeness per sensitive attribute.

use std::collections::HashSet;

use thiserror::Error;

use crate::distribution::{
    build_distribution, build_domain, DistributionError, DomainError, OrderingPolicy,
    ValueMultiset,
};
use crate::emd::{self, EmdError};
use crate::table::{partition_classes, AttributeRole, EquivalenceClass, Table};
use crate::Rational;

/// Which distance procedure to use for t-closeness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Prefix-sum definition, evaluated literally (quadratic).
    Definition,
    /// Single-pass linear scan.
    Efficient,
    /// Optimal transport plan, cost summed from weighted ordered distances.
    Transport,
    /// Variational distance (categorical attributes).
    Variational,
    /// Efficient for numeric attributes, variational for categorical.
    Auto,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Definition => "definition",
            Method::Efficient => "efficient",
            Method::Transport => "transport",
            Method::Variational => "variational",
            Method::Auto => "auto",
        }
    }

    /// Resolves `Auto` against the attribute role and rejects mismatched
    /// method/role combinations.
    fn resolve(self, role: AttributeRole) -> Result<Method, MetricsError> {
        match (self, role) {
            (Method::Auto, AttributeRole::SensitiveNumeric) => Ok(Method::Efficient),
            (Method::Auto, AttributeRole::SensitiveCategorical) => Ok(Method::Variational),
            (Method::Variational, AttributeRole::SensitiveCategorical) => Ok(Method::Variational),
            (
                Method::Definition | Method::Efficient | Method::Transport,
                AttributeRole::SensitiveNumeric,
            ) => Ok(self),
            _ => Err(MetricsError::MethodRoleMismatch {
                method: self.as_str(),
                role: role.as_str(),
            }),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("no equivalence classes")]
    NoClasses,
    #[error("unknown or non-sensitive attribute {0:?}")]
    UnknownAttribute(String),
    #[error("method {method:?} cannot be applied to a {role} attribute")]
    MethodRoleMismatch {
        method: &'static str,
        role: &'static str,
    },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error(transparent)]
    Emd(#[from] EmdError),
}

/// t-closeness result for one sensitive attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeCloseness {
    pub attribute: String,
    pub role: AttributeRole,
    /// The method actually applied (never `auto`).
    pub method: Method,
    pub ordering: OrderingPolicy,
    /// Maximum per-class distance.
    pub t: Rational,
    /// Per-class distances in first-appearance order of the classes.
    pub per_class: Vec<(Vec<String>, Rational)>,
    /// QI keys of every class attaining t, in first-appearance order.
    pub argmax_classes: Vec<Vec<String>>,
}

/// Full audit of a table.
#[derive(Debug, Clone, PartialEq)]
pub struct PrivacyAudit {
    pub k: usize,
    pub l: usize,
    pub attributes: Vec<AttributeCloseness>,
}

/// Minimum equivalence-class size.
pub fn k_anonymity(classes: &[EquivalenceClass]) -> Result<usize, MetricsError> {
    classes
        .iter()
        .map(EquivalenceClass::size)
        .min()
        .ok_or(MetricsError::NoClasses)
}

/// Distinct l-diversity: the minimum over classes of the number of
/// distinct values the sensitive attribute takes in that class.
pub fn l_diversity(
    table: &Table,
    classes: &[EquivalenceClass],
    attribute: &str,
) -> Result<usize, MetricsError> {
    if table
        .schema()
        .role_of(attribute)
        .filter(|r| r.is_sensitive())
        .is_none()
    {
        return Err(MetricsError::UnknownAttribute(attribute.to_string()));
    }
    classes
        .iter()
        .map(|class| {
            let values = class
                .values(table, attribute)
                .expect("attribute existence checked above");
            values.iter().collect::<HashSet<_>>().len()
        })
        .min()
        .ok_or(MetricsError::NoClasses)
}

/// Default ordering policy per attribute role: values sort ascending for
/// numeric attributes; order is irrelevant to the variational distance,
/// so categorical attributes keep first-appearance order.
pub fn default_ordering(role: AttributeRole) -> OrderingPolicy {
    match role {
        AttributeRole::SensitiveNumeric => OrderingPolicy::ValueAscending,
        _ => OrderingPolicy::FirstAppearance,
    }
}

/// Computes t-closeness for one sensitive attribute: the global
/// distribution over the whole column, one distribution per equivalence
/// class, the chosen distance for each class, and the maximum.
pub fn t_closeness(
    table: &Table,
    attribute: &str,
    method: Method,
    ordering: Option<OrderingPolicy>,
) -> Result<AttributeCloseness, MetricsError> {
    let role = table
        .schema()
        .role_of(attribute)
        .filter(|r| r.is_sensitive())
        .ok_or_else(|| MetricsError::UnknownAttribute(attribute.to_string()))?;
    let method = method.resolve(role)?;
    let ordering = ordering.unwrap_or_else(|| default_ordering(role));

    let column = table
        .column(attribute)
        .expect("attribute existence checked above");
    let global = ValueMultiset::new(column.iter().map(|s| s.to_string()).collect());
    let domain = build_domain(&global, ordering)?;
    let q = build_distribution(&global, &domain)?;

    let classes = partition_classes(table);
    let mut per_class = Vec::with_capacity(classes.len());
    for class in &classes {
        let values = class
            .values(table, attribute)
            .expect("attribute existence checked above");
        let multiset = ValueMultiset::new(values.iter().map(|s| s.to_string()).collect());
        let p = build_distribution(&multiset, &domain)?;
        let distance = match method {
            Method::Definition => emd::emd_definition(&p, &q)?,
            Method::Efficient => emd::emd_efficient(&p, &q)?,
            Method::Transport => emd::build_transport_plan(&p, &q)?.total_cost,
            Method::Variational => emd::emd_variational(&p, &q)?,
            Method::Auto => unreachable!("resolved above"),
        };
        per_class.push((class.qi_key.clone(), distance));
    }

    let t = per_class
        .iter()
        .map(|(_, d)| d.clone())
        .max()
        .ok_or(MetricsError::NoClasses)?;
    let argmax_classes = per_class
        .iter()
        .filter(|(_, d)| *d == t)
        .map(|(key, _)| key.clone())
        .collect();

    Ok(AttributeCloseness {
        attribute: attribute.to_string(),
        role,
        method,
        ordering,
        t,
        per_class,
        argmax_classes,
    })
}

/// Computes k, l, and t-closeness for every sensitive attribute. The
/// reported l is the minimum distinct l-diversity over the sensitive
/// attributes. An explicit `ordering` overrides the default for numeric
/// attributes only; categorical attributes always use first-appearance
/// order.
pub fn audit(
    table: &Table,
    method: Method,
    ordering: Option<OrderingPolicy>,
    attribute: Option<&str>,
) -> Result<PrivacyAudit, MetricsError> {
    let classes = partition_classes(table);
    let k = k_anonymity(&classes)?;

    let sensitive: Vec<String> = match attribute {
        Some(name) => vec![name.to_string()],
        None => table
            .schema()
            .sensitive_attributes()
            .iter()
            .map(|s| s.to_string())
            .collect(),
    };

    let mut l = usize::MAX;
    let mut attributes = Vec::with_capacity(sensitive.len());
    for name in &sensitive {
        l = l.min(l_diversity(table, &classes, name)?);
        let role = table.schema().role_of(name).expect("validated above");
        let ordering = match role {
            AttributeRole::SensitiveNumeric => ordering,
            _ => None,
        };
        attributes.push(t_closeness(table, name, method, ordering)?);
    }

    Ok(PrivacyAudit { k, l, attributes })
}
