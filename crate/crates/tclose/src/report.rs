//! Report rendering: exact rationals serialized as numerator/denominator
//! strings plus a decimal rendering rounded half-up at a configurable
//! precision (default 4 places).

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::metrics::PrivacyAudit;
use crate::Rational;

pub const DEFAULT_PRECISION: usize = 4;

/// Renders `r` with `precision` decimal places, rounding half-up
/// (half away from zero for negative values), e.g. 5/7 -> "0.7143".
pub fn decimal_string(r: &Rational, precision: usize) -> String {
    let ten_pow = BigInt::from(10u32).pow(precision as u32);
    let scaled = r.numer().abs() * &ten_pow;
    let denom = r.denom().abs();
    let two = BigInt::from(2u8);
    let rounded = (scaled * &two + &denom) / (denom * &two);
    let int_part = &rounded / &ten_pow;
    let frac_part = &rounded % &ten_pow;
    let sign = if r.is_negative() { "-" } else { "" };
    if precision == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = precision)
    }
}

/// An exact rational with its decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalValue {
    pub numerator: String,
    pub denominator: String,
    pub decimal: String,
}

impl RationalValue {
    pub fn from_rational(r: &Rational, precision: usize) -> Self {
        RationalValue {
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
            decimal: decimal_string(r, precision),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub qi_key: Vec<String>,
    pub distance: RationalValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeReport {
    pub name: String,
    pub role: String,
    pub method: String,
    pub ordering: String,
    pub t: RationalValue,
    pub classes: Vec<ClassEntry>,
    pub argmax: Vec<Vec<String>>,
}

/// Which metrics a report carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricSet {
    pub k: bool,
    pub l: bool,
    pub t: bool,
}

impl MetricSet {
    pub const ALL: MetricSet = MetricSet {
        k: true,
        l: true,
        t: true,
    };
}

/// The machine-readable audit report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrivacyReport {
    pub input: String,
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attributes: Vec<AttributeReport>,
}

impl PrivacyReport {
    pub fn build(
        input: &str,
        schema: &str,
        audit: &PrivacyAudit,
        metrics: MetricSet,
        precision: usize,
    ) -> Self {
        let attributes = if metrics.t {
            audit
                .attributes
                .iter()
                .map(|a| AttributeReport {
                    name: a.attribute.clone(),
                    role: a.role.as_str().to_string(),
                    method: a.method.as_str().to_string(),
                    ordering: a.ordering.as_str().to_string(),
                    t: RationalValue::from_rational(&a.t, precision),
                    classes: a
                        .per_class
                        .iter()
                        .map(|(key, d)| ClassEntry {
                            qi_key: key.clone(),
                            distance: RationalValue::from_rational(d, precision),
                        })
                        .collect(),
                    argmax: a.argmax_classes.clone(),
                })
                .collect()
        } else {
            Vec::new()
        };

        PrivacyReport {
            input: input.to_string(),
            schema: schema.to_string(),
            k: metrics.k.then_some(audit.k as u64),
            l: metrics.l.then_some(audit.l as u64),
            attributes,
        }
    }

    /// Pretty-printed JSON with a trailing newline. Re-serializing a
    /// parsed report reproduces the output byte for byte.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// Human-readable rendering with the same numeric content as the JSON.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("input:  {}\n", self.input));
        out.push_str(&format!("schema: {}\n", self.schema));
        if let Some(k) = self.k {
            out.push_str(&format!("k-anonymity: {k}\n"));
        }
        if let Some(l) = self.l {
            out.push_str(&format!("l-diversity (distinct): {l}\n"));
        }
        for attr in &self.attributes {
            out.push_str(&format!(
                "t-closeness of {:?} ({}, method={}, ordering={}):\n",
                attr.name, attr.role, attr.method, attr.ordering
            ));
            out.push_str(&format!(
                "  t = {}/{} = {}\n",
                attr.t.numerator, attr.t.denominator, attr.t.decimal
            ));
            for class in &attr.classes {
                out.push_str(&format!(
                    "  class [{}]: {}/{} = {}\n",
                    class.qi_key.join(", "),
                    class.distance.numerator,
                    class.distance.denominator,
                    class.distance.decimal
                ));
            }
            let argmax: Vec<String> = attr
                .argmax
                .iter()
                .map(|key| format!("[{}]", key.join(", ")))
                .collect();
            out.push_str(&format!("  maximal class(es): {}\n", argmax.join(", ")));
        }
        out
    }
}
