//! Value domains and exact-rational probability distributions.
//!
//! The global sensitive column of a table becomes an ordered [`Domain`] of
//! distinct values; the column of the whole table and of each equivalence
//! class then become [`Distribution`]s aligned index-for-index to that
//! domain, extended with zeros where a class lacks a value.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::Rational;

/// A list of text values with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueMultiset {
    items: Vec<String>,
}

impl ValueMultiset {
    pub fn new(items: Vec<String>) -> Self {
        ValueMultiset { items }
    }

    pub fn from_strs(items: &[&str]) -> Self {
        ValueMultiset {
            items: items.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// How distinct values are ordered when the domain is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingPolicy {
    /// Parse every value as a number and sort ascending.
    ValueAscending,
    /// Sort by count in the global multiset, most frequent first; ties
    /// keep first-appearance order.
    FrequencyDescending,
    /// Keep first-appearance order.
    FirstAppearance,
}

impl OrderingPolicy {
    /// String form used on the command line and in reports.
    pub fn as_str(self) -> &'static str {
        match self {
            OrderingPolicy::ValueAscending => "value",
            OrderingPolicy::FrequencyDescending => "freq-desc",
            OrderingPolicy::FirstAppearance => "appearance",
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DomainError {
    #[error("value {0:?} does not parse as a number")]
    NonNumericValue(String),
    #[error("cannot build a domain from an empty multiset")]
    EmptyMultiset,
}

#[derive(Debug, Error, PartialEq)]
pub enum DistributionError {
    #[error("value {0:?} is outside the domain")]
    ValueOutsideDomain(String),
    #[error("cannot build a distribution from an empty multiset")]
    EmptyMultiset,
}

/// The ordered list of distinct values a sensitive attribute takes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    values: Vec<String>,
    policy: OrderingPolicy,
}

impl Domain {
    pub fn values(&self) -> &[String] {
        &self.values
    }

    pub fn policy(&self) -> OrderingPolicy {
        self.policy
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A probability vector aligned to a [`Domain`]; entries are exact
/// rationals and sum to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    probs: Vec<Rational>,
}

impl Distribution {
    /// Wraps a raw probability vector. Callers are responsible for
    /// normalization; [`build_distribution`] is the usual entry point.
    pub fn from_probs(probs: Vec<Rational>) -> Self {
        Distribution { probs }
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.probs.iter().sum()
    }
}

/// Parses a numeric value label: integers, decimals, and a trailing
/// `k`/`K` multiplier (x1000), e.g. `3k` -> 3000, `2.5` -> 5/2.
pub fn parse_numeric_label(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (body, scale) = match text.strip_suffix(['k', 'K']) {
        Some(rest) => (rest, BigInt::from(1000)),
        None => (text, BigInt::one()),
    };
    if body.is_empty() {
        return None;
    }
    let (body, sign) = match body.strip_prefix('-') {
        Some(rest) => (rest, -BigInt::one()),
        None => (body.strip_prefix('+').unwrap_or(body), BigInt::one()),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Rational::new(sign * scale * numer, denom))
}

/// Builds the ordered domain of distinct values of `global` under `policy`.
pub fn build_domain(
    global: &ValueMultiset,
    policy: OrderingPolicy,
) -> Result<Domain, DomainError> {
    if global.is_empty() {
        return Err(DomainError::EmptyMultiset);
    }

    // Distinct values in first-appearance order, with counts.
    let mut distinct: Vec<(String, usize)> = Vec::new();
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for item in global.items() {
        match seen.get(item.as_str()) {
            Some(&i) => distinct[i].1 += 1,
            None => {
                seen.insert(item, distinct.len());
                distinct.push((item.clone(), 1));
            }
        }
    }

    let values = match policy {
        OrderingPolicy::FirstAppearance => distinct.into_iter().map(|(v, _)| v).collect(),
        OrderingPolicy::FrequencyDescending => {
            // Stable sort keeps first-appearance order within equal counts.
            let mut d = distinct;
            d.sort_by(|a, b| b.1.cmp(&a.1));
            d.into_iter().map(|(v, _)| v).collect()
        }
        OrderingPolicy::ValueAscending => {
            let mut keyed = Vec::with_capacity(distinct.len());
            for (v, _) in distinct {
                let key = parse_numeric_label(&v)
                    .ok_or_else(|| DomainError::NonNumericValue(v.clone()))?;
                keyed.push((key, v));
            }
            keyed.sort_by(|a, b| a.0.cmp(&b.0));
            keyed.into_iter().map(|(_, v)| v).collect()
        }
    };

    Ok(Domain { values, policy })
}

/// Builds the distribution of `values` over `domain`: entry i is the count
/// of `domain.values()[i]` in `values` divided by `|values|`, exactly.
pub fn build_distribution(
    values: &ValueMultiset,
    domain: &Domain,
) -> Result<Distribution, DistributionError> {
    if values.is_empty() {
        return Err(DistributionError::EmptyMultiset);
    }
    let index: HashMap<&str, usize> = domain
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();

    let mut counts = vec![0u64; domain.len()];
    for item in values.items() {
        let i = index
            .get(item.as_str())
            .ok_or_else(|| DistributionError::ValueOutsideDomain(item.clone()))?;
        counts[*i] += 1;
    }

    let total = BigInt::from(values.len());
    let probs = counts
        .into_iter()
        .map(|c| Rational::new(BigInt::from(c), total.clone()))
        .collect();
    Ok(Distribution { probs })
}
